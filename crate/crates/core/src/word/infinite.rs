use alloc::vec;
use alloc::vec::Vec;

use super::letter::Letter;
use super::spec::WordSpec;
use crate::{Error, Result};

/// Default number of start positions scanned by statistics and enumerations.
pub const DEFAULT_HORIZON: usize = 1 << 17;
/// Default maximum prefix length a handle will materialize.
pub const DEFAULT_HARD_CAP: usize = 1 << 24;

const MIN_GROWTH: usize = 1 << 10;

/// Lazily materialized prefix of an infinite word.
///
/// Extending the prefix needs `&mut self`; every read of letters that are
/// already materialized goes through `&self`, so a handle that has been
/// extended to its working length can be shared across threads.
#[derive(Clone, Debug)]
pub struct InfiniteWord {
    spec: WordSpec,
    letters: Vec<Letter>,
    // Bit i of the word lives at bit (63 - i % 64) of packed[i / 64].
    packed: Vec<u64>,
    hard_cap: usize,
}

impl InfiniteWord {
    pub fn new(spec: WordSpec) -> Result<Self> {
        Self::with_hard_cap(spec, DEFAULT_HARD_CAP)
    }

    pub fn with_hard_cap(spec: WordSpec, hard_cap: usize) -> Result<Self> {
        spec.validate()?;
        Ok(Self {
            spec,
            letters: Vec::new(),
            packed: Vec::new(),
            hard_cap,
        })
    }

    pub fn spec(&self) -> &WordSpec {
        &self.spec
    }

    pub fn hard_cap(&self) -> usize {
        self.hard_cap
    }

    /// Letters materialized so far.
    pub fn materialized(&self) -> &[Letter] {
        &self.letters
    }

    /// Makes sure at least `m` letters are materialized.
    pub fn ensure(&mut self, m: usize) -> Result<()> {
        if m <= self.letters.len() {
            return Ok(());
        }
        if m > self.hard_cap {
            return Err(Error::HardCapExceeded {
                requested: m,
                cap: self.hard_cap,
            });
        }
        let target = m
            .max(2 * self.letters.len())
            .max(MIN_GROWTH)
            .min(self.hard_cap);
        self.letters = generate(&self.spec, target);
        self.packed = pack(&self.letters);
        Ok(())
    }

    /// Ensures up to `m` letters, stopping silently at the hard cap.
    pub fn ensure_saturating(&mut self, m: usize) -> Result<()> {
        self.ensure(m.min(self.hard_cap))
    }

    pub fn prefix(&mut self, m: usize) -> Result<&[Letter]> {
        self.ensure(m)?;
        Ok(&self.letters[..m])
    }

    pub fn letter(&mut self, i: usize) -> Result<Letter> {
        self.ensure(i + 1)?;
        Ok(self.letters[i])
    }

    /// The factor `w_i .. w_j` (inclusive).
    pub fn factor(&mut self, i: usize, j: usize) -> Result<&[Letter]> {
        if i > j || j >= self.hard_cap {
            return Err(Error::OutOfRange { start: i, end: j });
        }
        self.ensure(j + 1)?;
        Ok(&self.letters[i..=j])
    }

    /// Length of the common prefix of the shifts at `a` and `b`, looking at
    /// no more than `limit` letters and only at materialized letters.
    pub fn common_prefix_len(&self, a: usize, b: usize, limit: usize) -> usize {
        let len = self.letters.len();
        let far = a.max(b);
        if far >= len {
            return 0;
        }
        let limit = limit.min(len - far);
        let mut off = 0;
        while off < limit {
            let diff = self.window64(a + off) ^ self.window64(b + off);
            let valid = (limit - off).min(64);
            if diff != 0 {
                let lz = diff.leading_zeros() as usize;
                if lz < valid {
                    return off + lz;
                }
            }
            off += valid;
        }
        limit
    }

    /// 64 letters starting at `i`, most significant bit first, zero padded
    /// past the materialized end.
    #[inline]
    fn window64(&self, i: usize) -> u64 {
        let w = i / 64;
        let o = i % 64;
        let hi = self.packed.get(w).copied().unwrap_or(0);
        if o == 0 {
            hi
        } else {
            let lo = self.packed.get(w + 1).copied().unwrap_or(0);
            (hi << o) | (lo >> (64 - o))
        }
    }
}

fn pack(letters: &[Letter]) -> Vec<u64> {
    let mut packed = vec![0u64; letters.len().div_ceil(64)];
    for (i, l) in letters.iter().enumerate() {
        packed[i / 64] |= l.bit() << (63 - i % 64);
    }
    packed
}

/// First `m` letters of the word described by `spec`.
pub(crate) fn generate(spec: &WordSpec, m: usize) -> Vec<Letter> {
    match spec {
        WordSpec::Named(w) => {
            let (zero, one) = w.morphism();
            fixed_point(zero, one, m)
        }
        WordSpec::Morphic { zero, one } => fixed_point(zero, one, m),
        WordSpec::SturmianCf { directive } => characteristic_word(directive, m),
        WordSpec::Doubled(inner) => {
            let base = generate(inner, m.div_ceil(2));
            let mut out: Vec<Letter> = base.iter().flat_map(|&l| [l, l]).collect();
            out.truncate(m);
            out
        }
        WordSpec::Complemented(inner) => generate(inner, m)
            .into_iter()
            .map(Letter::complement)
            .collect(),
        WordSpec::Shifted { offset, inner } => {
            let mut base = generate(inner, m + offset);
            base.drain(..*offset);
            base
        }
    }
}

fn fixed_point(zero: &[Letter], one: &[Letter], m: usize) -> Vec<Letter> {
    let mut w = vec![Letter::Zero];
    while w.len() < m {
        let mut next = Vec::with_capacity(m.min(w.len() * zero.len().max(one.len())));
        for &l in &w {
            next.extend_from_slice(if l == Letter::Zero { zero } else { one });
            if next.len() >= m {
                break;
            }
        }
        w = next;
    }
    w.truncate(m);
    w
}

/// Standard-word recursion `s_{-1} = 1`, `s_0 = 0`, `s_1 = s_0^{a_1 - 1} s_{-1}`,
/// `s_n = s_{n-1}^{a_n} s_{n-2}`, with `a_n` cycling through `directive`.
fn characteristic_word(directive: &[u32], m: usize) -> Vec<Letter> {
    let quotient = |n: usize| directive[(n - 1) % directive.len()] as usize;
    let mut older = vec![Letter::One];
    let mut old = vec![Letter::Zero];
    let mut n = 0;
    while n < 2 || old.len() < m {
        n += 1;
        let reps = if n == 1 { quotient(1) - 1 } else { quotient(n) };
        let mut next = Vec::with_capacity(old.len() * reps + older.len());
        for _ in 0..reps {
            next.extend_from_slice(&old);
        }
        next.extend_from_slice(&older);
        older = core::mem::replace(&mut old, next);
    }
    old.truncate(m);
    old
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{letters_to_string, NamedWord};

    fn prefix_str(spec: WordSpec, m: usize) -> alloc::string::String {
        let mut w = InfiniteWord::new(spec).unwrap();
        letters_to_string(w.prefix(m).unwrap())
    }

    #[test]
    fn named_prefixes() {
        assert_eq!(prefix_str(WordSpec::thue_morse(), 8), "01101001");
        assert_eq!(prefix_str(WordSpec::thue_morse(), 16), "0110100110010110");
        assert_eq!(prefix_str(WordSpec::fibonacci(), 12), "010010100100");
        assert_eq!(prefix_str(WordSpec::fibonacci(), 1), "0");
        assert_eq!(prefix_str(WordSpec::period_doubling(), 8), "01000101");
    }

    #[test]
    fn wrappers() {
        assert_eq!(prefix_str(WordSpec::thue_morse().double(), 8), "00111100");
        assert_eq!(prefix_str(WordSpec::thue_morse().complement(), 4), "1001");
        assert_eq!(prefix_str(WordSpec::fibonacci().shift(2), 6), "001010");
        assert_eq!(prefix_str(WordSpec::fibonacci(), 0), "");
    }

    #[test]
    fn golden_directive_is_complemented_fibonacci() {
        let st = WordSpec::sturmian(alloc::vec![1]).unwrap();
        assert_eq!(prefix_str(st.clone(), 10), "1011010110");
        assert_eq!(
            prefix_str(st, 2000),
            prefix_str(WordSpec::fibonacci().complement(), 2000)
        );
    }

    #[test]
    fn hard_cap_enforced() {
        let mut w = InfiniteWord::with_hard_cap(NamedWord::ThueMorse.into(), 100).unwrap();
        assert!(w.prefix(100).is_ok());
        assert_eq!(
            w.prefix(101).unwrap_err(),
            Error::HardCapExceeded {
                requested: 101,
                cap: 100
            }
        );
        assert!(w.factor(5, 4).is_err());
        assert!(w.factor(0, 100).is_err());
    }

    #[test]
    fn common_prefix_matches_naive() {
        let mut w = InfiniteWord::new(WordSpec::thue_morse()).unwrap();
        w.ensure(4096).unwrap();
        let letters = w.materialized().to_vec();
        for (a, b) in [(0, 12), (3, 200), (1, 2), (100, 1000), (0, 2048)] {
            let naive = letters[a..]
                .iter()
                .zip(&letters[b..])
                .take_while(|(x, y)| x == y)
                .count();
            assert_eq!(w.common_prefix_len(a, b, usize::MAX), naive, "{a} {b}");
        }
        // T[0,7] = T[12,19]
        assert!(w.common_prefix_len(0, 12, 1000) >= 8);
    }
}

//! Scan-based statistics over a finite horizon of an infinite word.
//!
//! Every quantity here is a lower bound certified by the scanned prefix.
//! The `converged` flags report whether the last change happened in the
//! first half of the scan.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::infinite::InfiniteWord;
use super::letter::Letter;
use crate::{Error, Result};

fn converged(last_change: usize, horizon: usize) -> bool {
    last_change < horizon / 2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSetReport {
    pub n: usize,
    pub horizon: usize,
    pub factors: BTreeSet<Vec<Letter>>,
    /// Start position of the last newly discovered factor.
    pub last_new: usize,
}

impl FactorSetReport {
    pub fn count(&self) -> usize {
        self.factors.len()
    }

    pub fn converged(&self) -> bool {
        converged(self.last_new, self.horizon)
    }
}

/// Distinct factors of length `n` starting at positions `0..horizon`.
pub fn factor_set(word: &mut InfiniteWord, n: usize, horizon: usize) -> Result<FactorSetReport> {
    if n == 0 {
        return Err(Error::TooShort { len: 0, min: 1 });
    }
    word.ensure(horizon + n - 1)?;
    let letters = word.materialized();
    let mut seen: BTreeSet<&[Letter]> = BTreeSet::new();
    let mut last_new = 0;
    for a in 0..horizon {
        if seen.insert(&letters[a..a + n]) {
            last_new = a;
        }
    }
    Ok(FactorSetReport {
        n,
        horizon,
        factors: seen.into_iter().map(<[Letter]>::to_vec).collect(),
        last_new,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunParameters {
    /// Longest run of `0`s seen.
    pub k0: usize,
    /// Longest run of `1`s seen.
    pub k1: usize,
    pub converged: bool,
}

impl RunParameters {
    pub fn scheme(&self) -> ClassScheme {
        ClassScheme::new(self.k0, self.k1)
    }
}

/// Maximal runs of each letter inside `prefix(horizon)`.
pub fn run_parameters(word: &mut InfiniteWord, horizon: usize) -> Result<RunParameters> {
    let letters = word.prefix(horizon)?;
    let mut best = [0usize; 2];
    let mut last_change = 0;
    let mut i = 0;
    while i < letters.len() {
        let x = letters[i];
        let run = letters[i..].iter().take_while(|&&l| l == x).count();
        if run > best[x as usize] {
            best[x as usize] = run;
            last_change = i;
        }
        i += run;
    }
    if best.contains(&0) {
        return Err(Error::Degenerate(horizon));
    }
    Ok(RunParameters {
        k0: best[0],
        k1: best[1],
        converged: converged(last_change, horizon),
    })
}

/// The ordered classes `0^k0 < 0^(k0-1)1 < ... < 01 < 10 < ... < 1^k1` that
/// partition the shifts of a word whose runs are bounded by `k0` and `k1`.
///
/// Class indices: a shift starting with a run of `m` zeros has index
/// `k0 - m`; one starting with a run of `m` ones has index `k0 + m - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassScheme {
    pub k0: usize,
    pub k1: usize,
}

impl ClassScheme {
    pub fn new(k0: usize, k1: usize) -> Self {
        assert!(k0 >= 1 && k1 >= 1, "run bounds must be positive");
        Self { k0, k1 }
    }

    /// `max(k0, k1)`: the extra letters of look-ahead the forward image needs.
    pub fn k(&self) -> usize {
        self.k0.max(self.k1)
    }

    /// `k0 + k1`.
    pub fn class_count(&self) -> usize {
        self.k0 + self.k1
    }

    fn bound(&self, x: Letter) -> usize {
        match x {
            Letter::Zero => self.k0,
            Letter::One => self.k1,
        }
    }

    /// Letter the shifts of class `j` start with.
    pub fn leading_letter(&self, j: usize) -> Letter {
        if j < self.k0 {
            Letter::Zero
        } else {
            Letter::One
        }
    }

    pub fn class_word(&self, j: usize) -> Vec<Letter> {
        let (x, m, bound) = if j < self.k0 {
            (Letter::Zero, self.k0 - j, self.k0)
        } else {
            (Letter::One, j - self.k0 + 1, self.k1)
        };
        let mut w = vec![x; m];
        // A maximal run is written without its terminator, except that a
        // run bound of 1 is shown as `01`/`10`.
        if m < bound || bound == 1 {
            w.push(x.complement());
        }
        w
    }

    pub fn class_words(&self) -> Vec<Vec<Letter>> {
        (0..self.class_count())
            .map(|j| self.class_word(j))
            .collect()
    }

    /// Class of the shift starting at `i`, reading only `letters`.
    ///
    /// `Ok(None)` when the slice ends before the class is determined.
    pub fn class_at(&self, letters: &[Letter], i: usize) -> Result<Option<usize>> {
        let x = letters[i];
        let bound = self.bound(x);
        let run = letters[i..]
            .iter()
            .take(bound + 1)
            .take_while(|&&l| l == x)
            .count();
        if run > bound {
            return Err(Error::RunTooLong {
                position: i,
                max: bound,
            });
        }
        if run < bound && i + run == letters.len() {
            return Ok(None);
        }
        Ok(Some(match x {
            Letter::Zero => self.k0 - run,
            Letter::One => self.k0 + run - 1,
        }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassTable {
    pub scheme: ClassScheme,
    pub classes: Vec<Vec<Letter>>,
    /// Class index of each scanned position.
    pub class_of: Vec<usize>,
    /// Whether the run scan converged.
    pub converged: bool,
}

impl ClassTable {
    pub fn k0(&self) -> usize {
        self.scheme.k0
    }

    pub fn k1(&self) -> usize {
        self.scheme.k1
    }

    pub fn k(&self) -> usize {
        self.scheme.k()
    }
}

pub fn class_table(word: &mut InfiniteWord, horizon: usize) -> Result<ClassTable> {
    let params = run_parameters(word, horizon)?;
    let scheme = params.scheme();
    word.ensure_saturating(horizon + scheme.k() + 1)?;
    let letters = word.materialized();
    let class_of = (0..horizon)
        .map(|i| {
            scheme
                .class_at(letters, i)?
                .ok_or(Error::UndeterminedClass(i))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassTable {
        scheme,
        classes: scheme.class_words(),
        class_of,
        converged: params.converged,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecurrenceWindow {
    pub n: usize,
    /// Smallest length `N` such that every scanned factor of length `N`
    /// contains every scanned factor of length `n`.
    pub window: usize,
    pub converged: bool,
}

pub fn recurrence_window(
    word: &mut InfiniteWord,
    n: usize,
    horizon: usize,
) -> Result<RecurrenceWindow> {
    let wanted = factor_set(word, n, horizon)?;
    let ids: BTreeMap<&[Letter], usize> = wanted
        .factors
        .iter()
        .enumerate()
        .map(|(id, f)| (f.as_slice(), id))
        .collect();
    let total = ids.len();

    word.ensure_saturating(2 * horizon + n)?;
    let letters = word.materialized();
    let starts = letters.len() + 1 - n;
    let id_at = |i: usize| ids.get(&letters[i..i + n]).copied();

    let mut counts = vec![0usize; total];
    let mut distinct = 0;
    let mut end = 0; // factor starts in [a, end) are counted
    let mut window = 0;
    let mut last_change = 0;
    for a in 0..horizon {
        while distinct < total {
            if end == starts {
                return Err(Error::NoRecurrenceWindow { n, horizon });
            }
            if let Some(id) = id_at(end) {
                counts[id] += 1;
                if counts[id] == 1 {
                    distinct += 1;
                }
            }
            end += 1;
        }
        let len = end - 1 + n - a;
        if len > window {
            window = len;
            last_change = a;
        }
        if let Some(id) = id_at(a) {
            counts[id] -= 1;
            if counts[id] == 0 {
                distinct -= 1;
            }
        }
    }
    Ok(RecurrenceWindow {
        n,
        window,
        converged: converged(last_change, horizon),
    })
}

/// Whether the number of `1`s over equal-length scanned factors differs by at
/// most one, for every length up to `n_max`.
pub fn check_balanced(word: &mut InfiniteWord, n_max: usize, horizon: usize) -> Result<bool> {
    let letters = word.prefix(horizon + n_max)?;
    let mut ones = Vec::with_capacity(letters.len() + 1);
    ones.push(0usize);
    for l in letters {
        ones.push(ones.last().unwrap() + l.bit() as usize);
    }
    for len in 1..=n_max {
        let (lo, hi) = (0..horizon)
            .map(|a| ones[a + len] - ones[a])
            .fold((usize::MAX, 0), |(lo, hi), c| (lo.min(c), hi.max(c)));
        if hi - lo > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest `p <= max_period` such that the second half of `prefix(len)` has
/// period `p`.
pub fn detect_period(
    word: &mut InfiniteWord,
    max_period: usize,
    len: usize,
) -> Result<Option<usize>> {
    let letters = word.prefix(len)?;
    let tail = &letters[len / 2..];
    Ok((1..=max_period.min(tail.len().saturating_sub(1)))
        .find(|&p| tail.iter().zip(&tail[p..]).all(|(x, y)| x == y)))
}

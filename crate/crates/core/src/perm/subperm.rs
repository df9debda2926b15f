use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::borrow::Borrow;
use core::fmt;
use core::str::FromStr;

use crate::word::Letter;
use crate::{Error, Result};

/// A finite permutation in one-line notation with ranks `1..=n`.
///
/// Ordering and equality compare the rank vectors only; where a permutation
/// was found is tracked by the containers that collect them.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubPermutation {
    ranks: Vec<u32>,
}

impl SubPermutation {
    pub fn new(ranks: Vec<u32>) -> Result<Self> {
        let n = ranks.len();
        let mut seen = vec![false; n];
        for &r in &ranks {
            let r = r as usize;
            if r == 0 || r > n || seen[r - 1] {
                return Err(Error::NotAPermutation(n));
            }
            seen[r - 1] = true;
        }
        Ok(Self { ranks })
    }

    pub(crate) fn from_ranks_unchecked(ranks: Vec<u32>) -> Self {
        debug_assert!(Self::new(ranks.clone()).is_ok());
        Self { ranks }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            ranks: (1..=n as u32).collect(),
        }
    }

    /// Ranks of distinct keys: the smallest key gets rank 1.
    pub fn from_keys<T: Ord>(keys: &[T]) -> Self {
        let mut order: Vec<usize> = (0..keys.len()).collect();
        order.sort_by(|&i, &j| keys[i].cmp(&keys[j]));
        let mut ranks = vec![0u32; keys.len()];
        for (r, i) in order.into_iter().enumerate() {
            ranks[i] = r as u32 + 1;
        }
        Self::from_ranks_unchecked(ranks)
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn into_ranks(self) -> Vec<u32> {
        self.ranks
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// The binary word of ascents (`0`) and descents (`1`), of length `n - 1`.
    pub fn form(&self) -> Result<Vec<Letter>> {
        if self.len() < 2 {
            return Err(Error::TooShort {
                len: self.len(),
                min: 2,
            });
        }
        Ok(self
            .ranks
            .windows(2)
            .map(|w| {
                if w[0] < w[1] {
                    Letter::Zero
                } else {
                    Letter::One
                }
            })
            .collect())
    }

    pub fn same_form(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self
                .ranks
                .windows(2)
                .zip(other.ranks.windows(2))
                .all(|(a, b)| (a[0] < a[1]) == (b[0] < b[1]))
    }

    /// Drops the last entry and re-ranks.
    pub fn restrict_left(&self) -> Result<Self> {
        let (&last, head) =
            self.ranks
                .split_last()
                .filter(|_| self.len() >= 2)
                .ok_or(Error::TooShort {
                    len: self.len(),
                    min: 2,
                })?;
        Ok(Self::from_ranks_unchecked(
            head.iter()
                .map(|&r| if last < r { r - 1 } else { r })
                .collect(),
        ))
    }

    /// Drops the first entry and re-ranks.
    pub fn restrict_right(&self) -> Result<Self> {
        let (&first, tail) =
            self.ranks
                .split_first()
                .filter(|_| self.len() >= 2)
                .ok_or(Error::TooShort {
                    len: self.len(),
                    min: 2,
                })?;
        Ok(Self::from_ranks_unchecked(
            tail.iter()
                .map(|&r| if first < r { r - 1 } else { r })
                .collect(),
        ))
    }

    /// Drops both endpoints and re-ranks.
    pub fn restrict_middle(&self) -> Result<Self> {
        if self.len() < 3 {
            return Err(Error::TooShort {
                len: self.len(),
                min: 3,
            });
        }
        self.restrict_left()?.restrict_right()
    }

    /// `k`-fold left restriction.
    pub fn iterate_left(&self, k: usize) -> Result<Self> {
        if self.len() <= k {
            return Err(Error::TooShort {
                len: self.len(),
                min: k + 1,
            });
        }
        let keep = self.len() - k;
        // Equivalent to k single restrictions: re-rank the first `keep` entries.
        Ok(Self::from_keys(&self.ranks[..keep]))
    }

    /// `n - r_i + 1`: the permutation induced by the complemented word.
    pub fn complement(&self) -> Self {
        let n = self.len() as u32;
        Self::from_ranks_unchecked(self.ranks.iter().map(|&r| n - r + 1).collect())
    }
}

/// Ascent/descent word of `p`.
pub fn form_of(p: &SubPermutation) -> Result<Vec<Letter>> {
    p.form()
}

/// The `n - 1` letters of the word a length-`n` subpermutation was read from.
///
/// Same computation as [`form_of`]: for binary words the form of
/// `π[a, a + n - 1]` is exactly `w[a, a + n - 2]`.
pub fn factor_from_perm(p: &SubPermutation) -> Result<Vec<Letter>> {
    p.form()
}

impl Borrow<[u32]> for SubPermutation {
    fn borrow(&self) -> &[u32] {
        &self.ranks
    }
}

impl From<&[u32]> for SubPermutation {
    /// Panics in debug builds if the slice is not a permutation.
    fn from(ranks: &[u32]) -> Self {
        Self::from_ranks_unchecked(ranks.to_owned())
    }
}

/// `(4 9 7 2 6 1 3 8 5)`
impl fmt::Display for SubPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, r) in self.ranks.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for SubPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::PermSyntax(String::from(s)))?;
        let ranks = inner
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::PermSyntax(String::from(s)))
            })
            .collect::<Result<Vec<_>>>()?;
        if ranks.is_empty() {
            return Err(Error::PermSyntax(String::from(s)));
        }
        Self::new(ranks)
    }
}

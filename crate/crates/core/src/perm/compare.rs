use alloc::vec::Vec;
use core::cmp::Ordering;

use super::SubPermutation;
use crate::word::InfiniteWord;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Less,
    Greater,
    /// The shifts agree on every inspected letter.
    Unresolved,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComparisonOutcome {
    pub relation: Relation,
    /// Offset of the first differing letter, if one was found.
    pub discrepancy: Option<usize>,
    pub cap_used: usize,
}

/// Compares the shifts at `a` and `b` on at most `cap` letters.
pub fn compare_shifts(
    word: &mut InfiniteWord,
    a: usize,
    b: usize,
    cap: usize,
) -> Result<ComparisonOutcome> {
    if a == b {
        return Err(Error::SamePosition(a));
    }
    word.ensure(a.max(b).saturating_add(cap))?;
    let c = word.common_prefix_len(a, b, cap);
    if c >= cap {
        return Ok(ComparisonOutcome {
            relation: Relation::Unresolved,
            discrepancy: None,
            cap_used: cap,
        });
    }
    let letters = word.materialized();
    let relation = if letters[a + c] < letters[b + c] {
        Relation::Less
    } else {
        Relation::Greater
    };
    Ok(ComparisonOutcome {
        relation,
        discrepancy: Some(c),
        cap_used: cap,
    })
}

/// Escalation schedule for shift comparisons.
///
/// The first attempt inspects `initial_factor * n` letters for a window of
/// length `n`; each retry multiplies the cap by `growth` until
/// `absolute_cap` (or the word's hard cap) is reached, after which the pair
/// is reported as [`Error::Unresolved`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CapPolicy {
    pub initial_factor: usize,
    pub growth: usize,
    pub absolute_cap: usize,
}

impl Default for CapPolicy {
    fn default() -> Self {
        Self {
            initial_factor: 4,
            growth: 4,
            absolute_cap: 1 << 20,
        }
    }
}

impl CapPolicy {
    pub fn initial_cap(&self, n: usize) -> usize {
        self.initial_factor
            .saturating_mul(n.max(1))
            .clamp(1, self.absolute_cap.max(1))
    }

    /// Orders the shifts at `a` and `b`, escalating the cap as needed.
    pub fn order(&self, word: &mut InfiniteWord, a: usize, b: usize, n: usize) -> Result<Ordering> {
        let far = a.max(b);
        let room = word.hard_cap().saturating_sub(far);
        let ceiling = self.absolute_cap.min(room);
        let mut cap = self.initial_cap(n);
        loop {
            let used = cap.min(ceiling);
            if used == 0 {
                return Err(Error::Unresolved { a, b, cap: 0 });
            }
            match compare_shifts(word, a, b, used)?.relation {
                Relation::Less => return Ok(Ordering::Less),
                Relation::Greater => return Ok(Ordering::Greater),
                Relation::Unresolved if used >= ceiling => {
                    return Err(Error::Unresolved { a, b, cap: used })
                }
                Relation::Unresolved => cap = cap.saturating_mul(self.growth.max(2)),
            }
        }
    }
}

/// `π[a, a + n - 1]` under the default [`CapPolicy`].
pub fn extract_subperm(word: &mut InfiniteWord, a: usize, n: usize) -> Result<SubPermutation> {
    extract_subperm_with(word, a, n, &CapPolicy::default())
}

pub fn extract_subperm_with(
    word: &mut InfiniteWord,
    a: usize,
    n: usize,
    policy: &CapPolicy,
) -> Result<SubPermutation> {
    if n == 0 {
        return Err(Error::TooShort { len: 0, min: 1 });
    }
    let end = a.checked_add(n).ok_or(Error::OutOfRange {
        start: a,
        end: usize::MAX,
    })?;
    word.ensure_saturating(end.saturating_add(policy.initial_cap(n)))?;
    let mut order: Vec<usize> = (a..end).collect();
    let mut failure = None;
    order.sort_by(|&x, &y| {
        if failure.is_some() {
            return Ordering::Equal;
        }
        policy.order(word, x, y, n).unwrap_or_else(|e| {
            failure = Some(e);
            Ordering::Equal
        })
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let mut ranks = alloc::vec![0u32; n];
    for (r, pos) in order.into_iter().enumerate() {
        ranks[pos - a] = r as u32 + 1;
    }
    Ok(SubPermutation::from_ranks_unchecked(ranks))
}

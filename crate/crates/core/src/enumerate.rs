//! Enumeration of the distinct subpermutations of an infinite word.
//!
//! For each start `a` the shifts `a .. a + M` are kept sorted; sliding to
//! `a + 1` removes one shift and binary-inserts one. Every length `n <= M`
//! is read off the same sorted window.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::RangeInclusive;

use crate::perm::{CapPolicy, SubPermutation};
use crate::word::{factor_set, FactorSetReport, InfiniteWord};
use crate::{Error, Result};

/// Where a subpermutation was first seen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Occurrence {
    pub first: usize,
    pub first_even: Option<usize>,
    pub first_odd: Option<usize>,
}

impl Occurrence {
    fn at(a: usize) -> Self {
        let mut o = Self {
            first: a,
            first_even: None,
            first_odd: None,
        };
        o.record(a);
        o
    }

    fn record(&mut self, a: usize) {
        let slot = if a.is_multiple_of(2) {
            &mut self.first_even
        } else {
            &mut self.first_odd
        };
        if slot.is_none() {
            *slot = Some(a);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermSetReport {
    pub n: usize,
    pub horizon: usize,
    pub perms: BTreeMap<SubPermutation, Occurrence>,
    /// Largest start at which a new subpermutation appeared.
    pub last_new: usize,
}

impl PermSetReport {
    pub fn tau(&self) -> usize {
        self.perms.len()
    }

    /// Subpermutations occurring at some even start.
    pub fn even_count(&self) -> usize {
        self.perms
            .values()
            .filter(|o| o.first_even.is_some())
            .count()
    }

    pub fn odd_count(&self) -> usize {
        self.perms
            .values()
            .filter(|o| o.first_odd.is_some())
            .count()
    }

    /// No new subpermutation in the second half of the scanned range.
    pub fn converged(&self) -> bool {
        self.last_new < self.horizon / 2
    }
}

pub fn enumerate_perms(
    word: &mut InfiniteWord,
    lengths: RangeInclusive<usize>,
    horizon: usize,
) -> Result<Vec<PermSetReport>> {
    enumerate_perms_with(word, lengths, horizon, &CapPolicy::default())
}

pub fn enumerate_perms_with(
    word: &mut InfiniteWord,
    lengths: RangeInclusive<usize>,
    horizon: usize,
    policy: &CapPolicy,
) -> Result<Vec<PermSetReport>> {
    let (lo, m) = (*lengths.start(), *lengths.end());
    if lo == 0 {
        return Err(Error::TooShort { len: 0, min: 1 });
    }
    if m < lo || horizon == 0 {
        return Ok(Vec::new());
    }
    word.ensure_saturating(
        horizon
            .saturating_add(m)
            .saturating_add(policy.initial_cap(m).saturating_mul(4)),
    )?;

    let mut reports: Vec<PermSetReport> = (lo..=m)
        .map(|n| PermSetReport {
            n,
            horizon,
            perms: BTreeMap::new(),
            last_new: 0,
        })
        .collect();

    let mut window = SortedWindow::new(word, policy, 0, m)?;
    let mut buf = vec![0u32; m];
    for a in 0..horizon {
        if a > 0 {
            window.slide(word, policy)?;
        }
        for report in reports.iter_mut() {
            let n = report.n;
            window.ranks_into(n, &mut buf[..n]);
            match report.perms.get_mut(&buf[..n]) {
                Some(occ) => occ.record(a),
                None => {
                    report
                        .perms
                        .insert(SubPermutation::from(&buf[..n]), Occurrence::at(a));
                    report.last_new = a;
                }
            }
        }
    }
    Ok(reports)
}

/// `τ(n)` scanned over `horizon` starts.
pub fn tau(word: &mut InfiniteWord, n: usize, horizon: usize) -> Result<PermSetReport> {
    Ok(enumerate_perms(word, n..=n, horizon)?.remove(0))
}

/// `ρ(n)` scanned over `horizon` starts.
pub fn rho(word: &mut InfiniteWord, n: usize, horizon: usize) -> Result<FactorSetReport> {
    factor_set(word, n, horizon)
}

/// Shifts `start .. start + len` kept in lexicographic order.
pub(crate) struct SortedWindow {
    start: usize,
    len: usize,
    sorted: Vec<usize>,
}

impl SortedWindow {
    pub(crate) fn new(
        word: &mut InfiniteWord,
        policy: &CapPolicy,
        start: usize,
        len: usize,
    ) -> Result<Self> {
        let mut w = Self {
            start,
            len,
            sorted: Vec::with_capacity(len + 1),
        };
        for pos in start..start + len {
            w.insert(word, policy, pos)?;
        }
        Ok(w)
    }

    pub(crate) fn slide(&mut self, word: &mut InfiniteWord, policy: &CapPolicy) -> Result<()> {
        let gone = self.start;
        let idx = self
            .sorted
            .iter()
            .position(|&p| p == gone)
            .expect("window start is always present");
        self.sorted.remove(idx);
        self.start += 1;
        self.insert(word, policy, self.start + self.len - 1)
    }

    fn insert(&mut self, word: &mut InfiniteWord, policy: &CapPolicy, pos: usize) -> Result<()> {
        let (mut lo, mut hi) = (0, self.sorted.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            if shift_order(word, policy, self.sorted[mid], pos, self.len)? == Ordering::Less {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        self.sorted.insert(lo, pos);
        Ok(())
    }

    /// Ranks of the first `n` positions of the window.
    pub(crate) fn ranks_into(&self, n: usize, out: &mut [u32]) {
        let end = self.start + n;
        let mut r = 0;
        for &p in &self.sorted {
            if p < end {
                r += 1;
                out[p - self.start] = r;
            }
        }
    }
}

/// Fast path over already materialized letters, escalating only when the
/// comparison runs off the materialized prefix.
pub(crate) fn shift_order(
    word: &mut InfiniteWord,
    policy: &CapPolicy,
    x: usize,
    y: usize,
    n: usize,
) -> Result<Ordering> {
    let len = word.materialized().len();
    let limit = policy.absolute_cap;
    let c = word.common_prefix_len(x, y, limit);
    if c < limit && x.max(y) + c < len {
        let l = word.materialized();
        return Ok(l[x + c].cmp(&l[y + c]));
    }
    policy.order(word, x, y, n)
}

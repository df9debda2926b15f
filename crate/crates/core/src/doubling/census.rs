use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::delta::{delta_image, DeltaResult, DoublingContext, Restriction};
use crate::enumerate::{enumerate_perms_with, PermSetReport};
use crate::perm::SubPermutation;
use crate::{Error, Result};

/// Subpermutations of a doubled word split by the parity of their starts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParitySplit {
    pub n: usize,
    pub even: BTreeSet<SubPermutation>,
    pub odd: BTreeSet<SubPermutation>,
    /// Rank vectors seen at both parities.
    pub overlap: usize,
}

impl ParitySplit {
    pub fn total(&self) -> usize {
        self.even.len() + self.odd.len() - self.overlap
    }
}

/// Splits `report` by start parity. At lengths `>= min_len` the two sides
/// must be disjoint.
pub fn partition_even_odd(report: &PermSetReport, min_len: usize) -> Result<ParitySplit> {
    let mut split = ParitySplit {
        n: report.n,
        even: BTreeSet::new(),
        odd: BTreeSet::new(),
        overlap: 0,
    };
    for (p, occ) in &report.perms {
        if occ.first_even.is_some() {
            split.even.insert(p.clone());
        }
        if occ.first_odd.is_some() {
            split.odd.insert(p.clone());
        }
        if occ.first_even.is_some() && occ.first_odd.is_some() {
            split.overlap += 1;
        }
    }
    if split.overlap > 0 && report.n >= min_len {
        return Err(Error::ParityOverlap(report.n));
    }
    Ok(split)
}

/// Two distinct inputs with the same (restricted) image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collision {
    pub p: SubPermutation,
    pub q: SubPermutation,
    pub p_start: usize,
    pub q_start: usize,
    pub image: SubPermutation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollisionCensus {
    /// Window length; inputs have length `n + k`.
    pub n: usize,
    pub restriction: Restriction,
    pub horizon: usize,
    /// Distinct inputs found.
    pub inputs: usize,
    /// Inputs skipped because their window misses some class.
    pub rejected: usize,
    /// Distinct images.
    pub images: usize,
    pub collisions: Vec<Collision>,
    pub converged: bool,
}

impl CollisionCensus {
    pub fn is_injective(&self) -> bool {
        self.collisions.is_empty()
    }
}

/// Forward images of every distinct input of length `n + k` found within
/// `horizon` starts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageSet {
    pub n: usize,
    pub report: PermSetReport,
    /// One entry per input whose window contains every class, in input order.
    pub results: Vec<DeltaResult>,
    /// Inputs skipped because their window misses some class.
    pub rejected: usize,
}

pub fn forward_images(ctx: &mut DoublingContext, n: usize, horizon: usize) -> Result<ImageSet> {
    let k = ctx.k();
    let scheme = *ctx.scheme();
    let policy = *ctx.policy();
    let report = enumerate_perms_with(ctx.base(), n + k..=n + k, horizon, &policy)?.remove(0);
    let mut results = Vec::with_capacity(report.tau());
    let mut rejected = 0;
    for (p, occ) in &report.perms {
        match delta_image(p, &scheme, occ.first) {
            Ok(res) => results.push(res),
            Err(Error::MissingClass { .. }) => rejected += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(ImageSet {
        n,
        report,
        results,
        rejected,
    })
}

/// All pairs of distinct inputs of length `n + k` found within `horizon`
/// starts whose images under `restriction` coincide.
///
/// Every full-image collision must have equal `k`-left restrictions and equal
/// classes position by position; every restricted collision must come from
/// equal window factors. A violation is reported as an error.
///
/// Inputs whose window misses a class have no image and are only counted.
pub fn collision_census(
    ctx: &mut DoublingContext,
    n: usize,
    horizon: usize,
    restriction: Restriction,
) -> Result<CollisionCensus> {
    let set = forward_images(ctx, n, horizon)?;
    let mut groups: BTreeMap<SubPermutation, Vec<&DeltaResult>> = BTreeMap::new();
    for res in &set.results {
        groups
            .entry(restriction.apply(&res.image)?)
            .or_default()
            .push(res);
    }

    let mut collisions = Vec::new();
    for (image, members) in &groups {
        for (i, x) in members.iter().enumerate() {
            for y in &members[i + 1..] {
                check_collision(x, y, restriction)?;
                collisions.push(Collision {
                    p: x.input.clone(),
                    q: y.input.clone(),
                    p_start: x.start,
                    q_start: y.start,
                    image: image.clone(),
                });
            }
        }
    }
    Ok(CollisionCensus {
        n,
        restriction,
        horizon,
        inputs: set.report.tau(),
        rejected: set.rejected,
        images: groups.len(),
        collisions,
        converged: set.report.converged(),
    })
}

fn check_collision(x: &DeltaResult, y: &DeltaResult, restriction: Restriction) -> Result<()> {
    let violation = |condition| Error::CollisionInvariant {
        a: x.start,
        b: y.start,
        condition,
    };
    if x.window_factor != y.window_factor {
        return Err(violation("equal window factors"));
    }
    if restriction == Restriction::Full {
        if x.input.iterate_left(x.k)? != y.input.iterate_left(y.k)? {
            return Err(violation("equal left restrictions of the window"));
        }
        if x.classes != y.classes {
            return Err(violation("equal classes at every window position"));
        }
    }
    Ok(())
}

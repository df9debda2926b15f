use alloc::vec::Vec;
use core::cmp::Ordering;

use super::cases::{DoubledCase, DoubledOrder};
use super::gamma::GammaProfile;
use crate::perm::{extract_subperm_with, CapPolicy, SubPermutation};
use crate::word::{
    recurrence_window, run_parameters, ClassScheme, InfiniteWord, Letter, RecurrenceWindow,
    WordSpec, DEFAULT_HARD_CAP,
};
use crate::{Error, Result};

/// Which part of the forward image is kept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Restriction {
    Full,
    Left,
    Right,
    Middle,
}

impl Restriction {
    pub const ALL: [Restriction; 4] = [Self::Full, Self::Left, Self::Right, Self::Middle];

    pub fn name(self) -> &'static str {
        match self {
            Self::Full => "delta",
            Self::Left => "delta-l",
            Self::Right => "delta-r",
            Self::Middle => "delta-m",
        }
    }

    pub fn apply(self, image: &SubPermutation) -> Result<SubPermutation> {
        match self {
            Self::Full => Ok(image.clone()),
            Self::Left => image.restrict_left(),
            Self::Right => image.restrict_right(),
            Self::Middle => image.restrict_middle(),
        }
    }

    /// Start of the restricted image in the doubled word.
    pub fn image_start(self, a: usize) -> usize {
        match self {
            Self::Full | Self::Left => 2 * a,
            Self::Right | Self::Middle => 2 * a + 1,
        }
    }

    /// Length of the restricted image for a window of length `n`.
    pub fn image_len(self, n: usize) -> usize {
        match self {
            Self::Full => 2 * n,
            Self::Left | Self::Right => 2 * n - 1,
            Self::Middle => 2 * n - 2,
        }
    }
}

/// The forward image of one window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaResult {
    pub start: usize,
    /// Window length `n`; the input has length `n + k`.
    pub window: usize,
    pub k: usize,
    pub input: SubPermutation,
    /// `w[a, a + n - 1]`.
    pub window_factor: Vec<Letter>,
    /// Class of each window position.
    pub classes: Vec<usize>,
    pub profile: GammaProfile,
    /// Length `2n`, read at `2a` in the doubled word.
    pub image: SubPermutation,
    /// The image was compared against direct extraction and matched.
    pub cross_checked: bool,
}

/// Forward image computed from the input permutation alone.
///
/// The form of `p` spells `w[a, a + n + k - 2]`, which determines the class
/// of every window position. `start` is only recorded.
pub fn delta_image(p: &SubPermutation, scheme: &ClassScheme, start: usize) -> Result<DeltaResult> {
    let k = scheme.k();
    if p.len() <= k {
        return Err(Error::TooShort {
            len: p.len(),
            min: k + 1,
        });
    }
    let n = p.len() - k;
    let form = p.form()?;
    let classes = (0..n)
        .map(|i| {
            scheme
                .class_at(&form, i)?
                .ok_or(Error::UndeterminedClass(start + i))
        })
        .collect::<Result<Vec<_>>>()?;
    let profile = GammaProfile::from_classes(start, &classes, scheme.class_count());
    if let Some(class) = profile.missing_class() {
        return Err(Error::MissingClass {
            start,
            len: n,
            class,
        });
    }
    let lk = p.iterate_left(k)?;
    let r = p.ranks();
    let mut image = Vec::with_capacity(2 * n);
    for (i, &j) in classes.iter().enumerate() {
        let base = lk.ranks()[i];
        let lo = base + profile.s_before(j) as u32;
        let hi = base + profile.s(j) as u32;
        if r[i] < r[i + 1] {
            image.extend([lo, hi]);
        } else {
            image.extend([hi, lo]);
        }
    }
    let image = SubPermutation::new(image)?;
    Ok(DeltaResult {
        start,
        window: n,
        k,
        input: p.clone(),
        window_factor: form[..n].to_vec(),
        classes,
        profile,
        image,
        cross_checked: false,
    })
}

/// A base word together with its doubled image and class scheme.
#[derive(Clone, Debug)]
pub struct DoublingContext {
    base: InfiniteWord,
    doubled: InfiniteWord,
    scheme: ClassScheme,
    runs_converged: bool,
    threshold: RecurrenceWindow,
    policy: CapPolicy,
    cross_check: bool,
}

impl DoublingContext {
    /// Scans `horizon` positions of `spec` for run bounds and the recurrence
    /// window of factors of length `k`.
    pub fn new(spec: WordSpec, horizon: usize) -> Result<Self> {
        Self::with_hard_cap(spec, horizon, DEFAULT_HARD_CAP)
    }

    pub fn with_hard_cap(spec: WordSpec, horizon: usize, hard_cap: usize) -> Result<Self> {
        let mut base = InfiniteWord::with_hard_cap(spec.clone(), hard_cap)?;
        let doubled = InfiniteWord::with_hard_cap(spec.double(), hard_cap)?;
        let runs = run_parameters(&mut base, horizon)?;
        let scheme = runs.scheme();
        let threshold = recurrence_window(&mut base, scheme.k(), horizon)?;
        Ok(Self {
            base,
            doubled,
            scheme,
            runs_converged: runs.converged,
            threshold,
            policy: CapPolicy::default(),
            cross_check: true,
        })
    }

    pub fn scheme(&self) -> &ClassScheme {
        &self.scheme
    }

    /// `max(k0, k1)`.
    pub fn k(&self) -> usize {
        self.scheme.k()
    }

    /// Scan estimate of `N_k`: windows at least this long contain every
    /// factor of length `k`.
    pub fn threshold(&self) -> RecurrenceWindow {
        self.threshold
    }

    pub fn runs_converged(&self) -> bool {
        self.runs_converged
    }

    pub fn base(&mut self) -> &mut InfiniteWord {
        &mut self.base
    }

    pub fn doubled(&mut self) -> &mut InfiniteWord {
        &mut self.doubled
    }

    pub fn policy(&self) -> &CapPolicy {
        &self.policy
    }

    pub fn set_policy(&mut self, policy: CapPolicy) {
        self.policy = policy;
    }

    pub fn cross_check(&self) -> bool {
        self.cross_check
    }

    /// Direct extraction cross-checks are on by default.
    pub fn set_cross_check(&mut self, on: bool) {
        self.cross_check = on;
    }

    pub fn class_of(&mut self, a: usize) -> Result<usize> {
        let need = a + self.k() + 1;
        self.base.ensure(need)?;
        self.scheme
            .class_at(&self.base.materialized()[..need], a)?
            .ok_or(Error::UndeterminedClass(a))
    }

    pub fn gamma_profile(&mut self, a: usize, n: usize) -> Result<GammaProfile> {
        let classes = (a..a + n)
            .map(|i| self.class_of(i))
            .collect::<Result<Vec<_>>>()?;
        Ok(GammaProfile::from_classes(
            a,
            &classes,
            self.scheme.class_count(),
        ))
    }

    /// Order case for two base positions, and the induced order
    /// of their four doubled shifts.
    pub fn order_doubled_shifts(&mut self, a: usize, b: usize) -> Result<DoubledOrder> {
        if a == b {
            return Err(Error::SamePosition(a));
        }
        let swapped = self.policy.order(&mut self.base, a, b, 1)? == Ordering::Greater;
        let (lo, hi) = if swapped { (b, a) } else { (a, b) };
        let (class_lo, class_hi) = (self.class_of(lo)?, self.class_of(hi)?);
        let letters = self.base.materialized();
        let case = DoubledCase::classify(letters[lo], letters[hi], class_lo, class_hi);
        Ok(DoubledOrder {
            case,
            swapped,
            order: case.order(lo, hi),
        })
    }

    pub fn delta(&mut self, a: usize, n: usize) -> Result<DeltaResult> {
        if n == 0 {
            return Err(Error::TooShort { len: 0, min: 1 });
        }
        let len = n + self.k();
        let p = extract_subperm_with(&mut self.base, a, len, &self.policy)?;
        let mut result = delta_image(&p, &self.scheme, a)?;
        if self.cross_check {
            let direct = extract_subperm_with(&mut self.doubled, 2 * a, 2 * n, &self.policy)?;
            if direct != result.image {
                return Err(Error::CrossCheckFailed { start: a, len: n });
            }
            result.cross_checked = true;
        }
        Ok(result)
    }

    pub fn restricted(&mut self, a: usize, n: usize, r: Restriction) -> Result<SubPermutation> {
        let image = r.apply(&self.delta(a, n)?.image)?;
        if self.cross_check && r != Restriction::Full {
            let direct = extract_subperm_with(
                &mut self.doubled,
                r.image_start(a),
                r.image_len(n),
                &self.policy,
            )?;
            if direct != image {
                return Err(Error::CrossCheckFailed { start: a, len: n });
            }
        }
        Ok(image)
    }

    pub fn delta_l(&mut self, a: usize, n: usize) -> Result<SubPermutation> {
        self.restricted(a, n, Restriction::Left)
    }

    pub fn delta_r(&mut self, a: usize, n: usize) -> Result<SubPermutation> {
        self.restricted(a, n, Restriction::Right)
    }

    pub fn delta_m(&mut self, a: usize, n: usize) -> Result<SubPermutation> {
        self.restricted(a, n, Restriction::Middle)
    }
}

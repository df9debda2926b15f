use crate::{Error, Result};

/// How `n` is split into a power of two and a remainder.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// `n = 2^r + p + 1`, `0 < p <= 2^r`.
    Rho,
    /// `n = 2^r + p`, `0 < p <= 2^r`.
    Tau,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NDecomposition {
    pub n: usize,
    pub r: u32,
    pub p: usize,
    pub convention: Convention,
}

impl NDecomposition {
    pub fn reconstruct(&self) -> usize {
        let base = (1usize << self.r) + self.p;
        match self.convention {
            Convention::Rho => base + 1,
            Convention::Tau => base,
        }
    }
}

pub fn decompose(n: usize, convention: Convention) -> Result<NDecomposition> {
    let (m, min) = match convention {
        Convention::Rho => (n.saturating_sub(1), 3),
        Convention::Tau => (n, 2),
    };
    if n < min {
        return Err(Error::BelowThreshold {
            what: "decomposition",
            n,
            min,
        });
    }
    // Largest r with 2^r < m.
    let r = (m - 1).ilog2();
    Ok(NDecomposition {
        n,
        r,
        p: m - (1 << r),
        convention,
    })
}

/// Factor complexity of the Thue-Morse word, `n >= 3`.
pub fn rho_tm_formula(n: usize) -> Result<usize> {
    if n < 3 {
        return Err(Error::BelowThreshold {
            what: "Thue-Morse factor formula",
            n,
            min: 3,
        });
    }
    let d = decompose(n, Convention::Rho)?;
    let two_r = 1usize << d.r;
    // Both branches carry 2^(r-1); double them to stay integral at r = 0.
    let doubled = if 2 * d.p <= two_r {
        6 * two_r + 8 * d.p
    } else {
        8 * two_r + 4 * d.p
    };
    Ok(doubled / 2)
}

/// Permutation complexity of the Thue-Morse word, `n >= 6`.
pub fn tau_tm_formula(n: usize) -> Result<usize> {
    if n < 6 {
        return Err(Error::BelowThreshold {
            what: "Thue-Morse permutation formula",
            n,
            min: 6,
        });
    }
    let d = decompose(n, Convention::Tau)?;
    Ok(2 * ((2usize << d.r) + d.p - 2))
}

/// `n + 2k + 1` for the doubled image of a Sturmian word, asserted for
/// `n >= 2N`.
pub fn tau_doubled_sturmian_formula(n: usize, k: usize, big_n: usize) -> Result<usize> {
    if n < 2 * big_n {
        return Err(Error::BelowThreshold {
            what: "doubled Sturmian formula",
            n,
            min: 2 * big_n,
        });
    }
    Ok(n + 2 * k + 1)
}

/// Permutation complexity of the doubled Thue-Morse word at length
/// `m = 2n - 1` or `m = 2n`, `n >= 9`.
pub fn tau_doubled_tm_formula(m: usize) -> Result<usize> {
    let n = m.div_ceil(2);
    if n < 9 {
        return Err(Error::BelowThreshold {
            what: "doubled Thue-Morse formula",
            n: m,
            min: 17,
        });
    }
    let even = m.is_multiple_of(2);
    let r = n.ilog2();
    Ok(if n.is_power_of_two() {
        (4usize << r) + (2usize << r) + if even { 4 } else { 0 }
    } else {
        let p = n - (1 << r);
        (8usize << r) + 4 * p + if even { 2 } else { 0 }
    })
}

use alloc::vec::Vec;

use super::SubPermutation;
use crate::{Error, Result};

/// A split `p = (α λ β)` with `|α| = |β| = k` and `α_i = β_i + ε` for a
/// common `ε ∈ {-1, +1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeKDecomposition {
    pub k: usize,
    pub epsilon: i32,
    pub alpha: Vec<u32>,
    pub lambda: Vec<u32>,
    pub beta: Vec<u32>,
}

impl TypeKDecomposition {
    /// `|p| = 2k`, so the middle block is empty.
    pub fn empty_middle(&self) -> bool {
        self.lambda.is_empty()
    }

    /// `(β λ α)`.
    pub fn swapped(&self) -> SubPermutation {
        let mut ranks = Vec::with_capacity(2 * self.k + self.lambda.len());
        ranks.extend_from_slice(&self.beta);
        ranks.extend_from_slice(&self.lambda);
        ranks.extend_from_slice(&self.alpha);
        SubPermutation::from_ranks_unchecked(ranks)
    }
}

pub fn decompose_type(p: &SubPermutation, k: usize) -> Option<TypeKDecomposition> {
    let n = p.len();
    if k == 0 || 2 * k > n {
        return None;
    }
    let r = p.ranks();
    let (alpha, rest) = r.split_at(k);
    let (lambda, beta) = rest.split_at(n - 2 * k);
    let epsilon = alpha[0] as i64 - beta[0] as i64;
    if epsilon.abs() != 1 {
        return None;
    }
    alpha
        .iter()
        .zip(beta)
        .all(|(&x, &y)| x as i64 - y as i64 == epsilon)
        .then(|| TypeKDecomposition {
            k,
            epsilon: epsilon as i32,
            alpha: alpha.to_vec(),
            lambda: lambda.to_vec(),
            beta: beta.to_vec(),
        })
}

/// Largest `k` such that `p = (α λ β)` and `q = (β λ α)` with `p` of type `k`.
pub fn complementary_pair_type(p: &SubPermutation, q: &SubPermutation) -> Result<Option<usize>> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch(p.len(), q.len()));
    }
    if p == q {
        return Ok(None);
    }
    Ok((1..=p.len() / 2)
        .rev()
        .find(|&k| decompose_type(p, k).is_some_and(|d| d.swapped() == *q)))
}

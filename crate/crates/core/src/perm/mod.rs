//! Permutation engine: shift order, subpermutations and their transforms.

mod compare;
mod pairs;
mod subperm;

pub use compare::{
    compare_shifts, extract_subperm, extract_subperm_with, CapPolicy, ComparisonOutcome, Relation,
};
pub use pairs::{complementary_pair_type, decompose_type, TypeKDecomposition};
pub use subperm::{factor_from_perm, form_of, SubPermutation};

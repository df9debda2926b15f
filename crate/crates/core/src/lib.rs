//! Infinite aperiodic binary words, the infinite permutations they induce,
//! and the letter-doubling map on their subpermutations.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is pure
//! computation over lazily materialized word prefixes; file formats, the
//! word-spec parser and the command line live in the companion CLI crate.
//!
//! Layout:
//!
//! * [`word`]: word specifications, lazy prefix generation, factors, runs,
//!   class tables and recurrence scans.
//! * [`perm`]: shift comparison, subpermutation extraction, forms,
//!   restrictions, complements and complementary pairs.
//! * [`enumerate`]: deduplicated subpermutation sets over a horizon.
//! * [`doubling`]: the class profile of a window, the forward image map of
//!   the doubled word and its restrictions, parity split and collision census.
//! * [`lab`]: closed-form complexity values and the named verification suites.
#![no_std]

extern crate alloc;

pub mod doubling;
pub mod enumerate;
mod error;
pub mod lab;
pub mod perm;
pub mod word;

pub use error::{Error, Result};
pub use perm::SubPermutation;
pub use word::{InfiniteWord, Letter, NamedWord, WordSpec};

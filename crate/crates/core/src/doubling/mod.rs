//! The letter-doubling map `d: a -> aa` and its action on subpermutations.
//!
//! Two constants are kept apart here: the class count `k0 + k1` and the
//! look-ahead `k = max(k0, k1)`. The forward image takes a subpermutation of
//! length `n + k` of the base word at `a` to one of length `2n` of the
//! doubled word at `2a`.

mod cases;
mod census;
mod delta;
mod gamma;

pub use cases::{DoubledCase, DoubledOrder};
pub use census::{
    collision_census, forward_images, partition_even_odd, Collision, CollisionCensus, ImageSet,
    ParitySplit,
};
pub use delta::{delta_image, DeltaResult, DoublingContext, Restriction};
pub use gamma::GammaProfile;

use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid word spec: {0}")]
    InvalidSpec(String),

    #[error("prefix of length {requested} exceeds the hard cap of {cap} letters")]
    HardCapExceeded { requested: usize, cap: usize },

    #[error("index range [{start}, {end}] is invalid")]
    OutOfRange { start: usize, end: usize },

    #[error("shifts at {a} and {b} agree on {cap} letters (suspected periodicity)")]
    Unresolved { a: usize, b: usize, cap: usize },

    #[error("positions must differ (got {0} twice)")]
    SamePosition(usize),

    #[error("prefix of length {0} contains a single letter")]
    Degenerate(usize),

    #[error("class of position {0} is not determined by the available letters")]
    UndeterminedClass(usize),

    #[error("run of length > {max} at position {position} contradicts the class table")]
    RunTooLong { position: usize, max: usize },

    #[error("length {len} is too small (need at least {min})")]
    TooShort { len: usize, min: usize },

    #[error("permutations have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),

    #[error("not a permutation of 1..={0}")]
    NotAPermutation(usize),

    #[error("malformed permutation text: {0}")]
    PermSyntax(String),

    #[error("window [{start}, +{len}) has no position of class {class}")]
    MissingClass {
        start: usize,
        len: usize,
        class: usize,
    },

    #[error("image at {start} (window {len}) differs from direct extraction")]
    CrossCheckFailed { start: usize, len: usize },

    #[error("even/odd subpermutation sets of length {0} intersect")]
    ParityOverlap(usize),

    #[error("collision between windows at {a} and {b} violates {condition}")]
    CollisionInvariant {
        a: usize,
        b: usize,
        condition: &'static str,
    },

    #[error("no recurrence window for length {n} within {horizon} positions")]
    NoRecurrenceWindow { n: usize, horizon: usize },

    #[error("{what} is not asserted for n = {n} (needs n >= {min})")]
    BelowThreshold {
        what: &'static str,
        n: usize,
        min: usize,
    },

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

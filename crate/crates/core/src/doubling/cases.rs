use crate::word::Letter;

/// The five relative orders of `d(w)[2a], d(w)[2a+1], d(w)[2b], d(w)[2b+1]`
/// when `w[a] < w[b]` and the class of `a` is at most that of `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DoubledCase {
    /// Both start with `0`, classes differ: `2a < 2a+1 < 2b < 2b+1`.
    A,
    /// Both start with `0`, same class: `2a < 2b < 2a+1 < 2b+1`.
    B,
    /// `0` then `1`: `2a < 2a+1 < 2b+1 < 2b`.
    C,
    /// Both start with `1`, classes differ: `2a+1 < 2a < 2b+1 < 2b`.
    D,
    /// Both start with `1`, same class: `2a+1 < 2b+1 < 2a < 2b`.
    E,
}

impl DoubledCase {
    pub fn classify(first_a: Letter, first_b: Letter, class_a: usize, class_b: usize) -> Self {
        match (first_a, first_b) {
            (Letter::Zero, Letter::Zero) if class_a == class_b => Self::B,
            (Letter::Zero, Letter::Zero) => Self::A,
            (Letter::One, Letter::One) if class_a == class_b => Self::E,
            (Letter::One, Letter::One) => Self::D,
            _ => Self::C,
        }
    }

    pub fn label(self) -> char {
        match self {
            Self::A => 'a',
            Self::B => 'b',
            Self::C => 'c',
            Self::D => 'd',
            Self::E => 'e',
        }
    }

    /// Increasing order of the four doubled positions of `a < b`.
    pub fn order(self, a: usize, b: usize) -> [usize; 4] {
        let (a0, a1, b0, b1) = (2 * a, 2 * a + 1, 2 * b, 2 * b + 1);
        match self {
            Self::A => [a0, a1, b0, b1],
            Self::B => [a0, b0, a1, b1],
            Self::C => [a0, a1, b1, b0],
            Self::D => [a1, a0, b1, b0],
            Self::E => [a1, b1, a0, b0],
        }
    }
}

/// Result of ordering the doubled shifts of two base positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoubledOrder {
    pub case: DoubledCase,
    /// The inputs were given with the larger shift first.
    pub swapped: bool,
    /// Positions of the doubled word in increasing shift order.
    pub order: [usize; 4],
}

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use super::letter::{Letter, Letters};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedWord {
    /// Fixed point of `0 -> 01, 1 -> 0`.
    Fibonacci,
    /// Fixed point of `0 -> 01, 1 -> 10`.
    ThueMorse,
    /// Fixed point of `0 -> 01, 1 -> 00`.
    PeriodDoubling,
}

impl NamedWord {
    pub const ALL: [NamedWord; 3] = [
        NamedWord::Fibonacci,
        NamedWord::ThueMorse,
        NamedWord::PeriodDoubling,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedWord::Fibonacci => "fibonacci",
            NamedWord::ThueMorse => "thue-morse",
            NamedWord::PeriodDoubling => "period-doubling",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|w| w.name() == name)
    }

    /// Images of `0` and `1` under the generating morphism.
    pub fn morphism(self) -> (&'static [Letter], &'static [Letter]) {
        use Letter::{One as I, Zero as O};
        match self {
            NamedWord::Fibonacci => (&[O, I], &[O]),
            NamedWord::ThueMorse => (&[O, I], &[I, O]),
            NamedWord::PeriodDoubling => (&[O, I], &[O, O]),
        }
    }
}

/// Description of an infinite binary word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WordSpec {
    Named(NamedWord),
    /// Fixed point starting with `0` of the morphism `0 -> zero, 1 -> one`.
    Morphic {
        zero: Vec<Letter>,
        one: Vec<Letter>,
    },
    /// Characteristic Sturmian word of the continued fraction whose partial
    /// quotients repeat `directive` periodically.
    SturmianCf {
        directive: Vec<u32>,
    },
    Doubled(Box<WordSpec>),
    Complemented(Box<WordSpec>),
    Shifted {
        offset: usize,
        inner: Box<WordSpec>,
    },
}

impl WordSpec {
    pub fn named(w: NamedWord) -> Self {
        WordSpec::Named(w)
    }

    pub fn fibonacci() -> Self {
        WordSpec::Named(NamedWord::Fibonacci)
    }

    pub fn thue_morse() -> Self {
        WordSpec::Named(NamedWord::ThueMorse)
    }

    pub fn period_doubling() -> Self {
        WordSpec::Named(NamedWord::PeriodDoubling)
    }

    pub fn morphic(zero: Vec<Letter>, one: Vec<Letter>) -> Result<Self> {
        let spec = WordSpec::Morphic { zero, one };
        spec.validate()?;
        Ok(spec)
    }

    pub fn sturmian(directive: Vec<u32>) -> Result<Self> {
        let spec = WordSpec::SturmianCf { directive };
        spec.validate()?;
        Ok(spec)
    }

    /// Image under the letter-doubling morphism `a -> aa`.
    pub fn double(self) -> Self {
        WordSpec::Doubled(Box::new(self))
    }

    pub fn complement(self) -> Self {
        WordSpec::Complemented(Box::new(self))
    }

    /// Drops the first `offset` letters.
    pub fn shift(self, offset: usize) -> Self {
        WordSpec::Shifted {
            offset,
            inner: Box::new(self),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            WordSpec::Named(_) => Ok(()),
            WordSpec::Morphic { zero, one } => {
                if zero.first() != Some(&Letter::Zero) || zero.len() < 2 {
                    return Err(Error::InvalidSpec(format!(
                        "image of 0 must start with 0 and have length >= 2 (got `{}`)",
                        Letters(zero)
                    )));
                }
                if one.is_empty() {
                    return Err(Error::InvalidSpec("image of 1 must be non-empty".into()));
                }
                Ok(())
            }
            WordSpec::SturmianCf { directive } => {
                if directive.is_empty() {
                    return Err(Error::InvalidSpec(
                        "empty continued-fraction directive".into(),
                    ));
                }
                if directive.contains(&0) {
                    return Err(Error::InvalidSpec(
                        "continued-fraction entries must be >= 1".into(),
                    ));
                }
                Ok(())
            }
            WordSpec::Doubled(inner) | WordSpec::Complemented(inner) => inner.validate(),
            WordSpec::Shifted { inner, .. } => inner.validate(),
        }
    }

    /// The word with the doubling wrapper peeled off, if this is a doubled spec.
    pub fn undoubled(&self) -> Option<&WordSpec> {
        match self {
            WordSpec::Doubled(inner) => Some(inner),
            _ => None,
        }
    }
}

impl From<NamedWord> for WordSpec {
    fn from(w: NamedWord) -> Self {
        WordSpec::Named(w)
    }
}

/// Renders the word-spec mini-language accepted by the CLI.
impl fmt::Display for WordSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordSpec::Named(w) => f.write_str(w.name()),
            WordSpec::Morphic { zero, one } => {
                write!(f, "morphic:0->{},1->{}", Letters(zero), Letters(one))
            }
            WordSpec::SturmianCf { directive } => {
                f.write_str("sturmian:cf=[")?;
                for (i, a) in directive.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str("]")
            }
            WordSpec::Doubled(inner) => write!(f, "double({inner})"),
            WordSpec::Complemented(inner) => write!(f, "complement({inner})"),
            WordSpec::Shifted { offset, inner } => write!(f, "shift({offset},{inner})"),
        }
    }
}

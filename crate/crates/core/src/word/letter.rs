use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A binary letter, ordered `0 < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Letter {
    Zero = 0,
    One = 1,
}

impl Letter {
    pub fn complement(self) -> Self {
        match self {
            Letter::Zero => Letter::One,
            Letter::One => Letter::Zero,
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '0' => Some(Letter::Zero),
            '1' => Some(Letter::One),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::Zero => '0',
            Letter::One => '1',
        }
    }

    #[inline]
    pub fn bit(self) -> u64 {
        self as u64
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Displays a letter slice as a `0`/`1` string.
pub struct Letters<'a>(pub &'a [Letter]);

impl fmt::Display for Letters<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

pub fn parse_letters(s: &str) -> Option<Vec<Letter>> {
    s.chars().map(Letter::from_char).collect()
}

pub fn letters_to_string(letters: &[Letter]) -> String {
    letters.iter().map(|l| l.as_char()).collect()
}

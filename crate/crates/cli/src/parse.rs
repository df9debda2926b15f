//! Parser for the word-spec mini-language.
//!
//! ```text
//! spec     := named | morphic | sturmian | wrapper
//! named    := "fibonacci" | "thue-morse" | "period-doubling"
//! morphic  := "morphic" ":" "0" "->" bits "," "1" "->" bits
//! sturmian := "sturmian" ":" "cf" "=" "[" int ("," int)* "]"
//! wrapper  := ("double" | "complement") "(" spec ")"
//!           | "shift" "(" int "," spec ")"
//! bits     := int+            (digits 0 and 1 only)
//! ```
//!
//! Whitespace between tokens is ignored, so `0 1` and `01` are the same
//! image. Rendering is the core's `Display` for `WordSpec`.

use wordperm_core::word::{parse_letters, Letter, NamedWord};
use wordperm_core::WordSpec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("at position {position}: expected {expected}, found {found}")]
    Syntax {
        position: usize,
        expected: String,
        found: String,
    },
    #[error("at position {position}: {source}")]
    Invalid {
        position: usize,
        source: wordperm_core::Error,
    },
}

pub fn parse_spec(text: &str) -> Result<WordSpec, SpecError> {
    let mut p = Parser::new(text);
    let spec = p.spec()?;
    p.expect_end()?;
    Ok(spec)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Ident(&'a str),
    Int(&'a str),
    Punct(&'static str),
    End,
}

impl Tok<'_> {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(s) => format!("`{s}`"),
            Tok::Punct(s) => format!("`{s}`"),
            Tok::End => "end of input".into(),
        }
    }
}

const PUNCT: [&str; 8] = ["->", ":", ",", "(", ")", "[", "]", "="];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    /// Next token and the position it starts at, without consuming it.
    fn peek(&mut self) -> (Tok<'a>, usize, usize) {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let Some(c) = rest.chars().next() else {
            return (Tok::End, start, start);
        };
        if let Some(p) = PUNCT.iter().find(|p| rest.starts_with(**p)) {
            return (Tok::Punct(p), start, start + p.len());
        }
        let span = |pred: fn(char) -> bool| rest.find(|ch: char| !pred(ch)).unwrap_or(rest.len());
        if c.is_ascii_digit() {
            let len = span(|ch| ch.is_ascii_digit());
            return (Tok::Int(&rest[..len]), start, start + len);
        }
        if c.is_ascii_alphabetic() {
            let len = span(|ch| ch.is_ascii_alphanumeric() || ch == '-' || ch == '_');
            // `-` may only continue an identifier, never start `->`.
            let len = rest[..len].find("->").unwrap_or(len);
            return (Tok::Ident(&rest[..len]), start, start + len);
        }
        let len = c.len_utf8();
        (Tok::Ident(&rest[..len]), start, start + len)
    }

    fn next(&mut self) -> (Tok<'a>, usize) {
        let (tok, start, end) = self.peek();
        self.pos = end;
        (tok, start)
    }

    fn error<T>(&mut self, expected: &str) -> Result<T, SpecError> {
        let (tok, position, _) = self.peek();
        Err(SpecError::Syntax {
            position,
            expected: expected.into(),
            found: tok.describe(),
        })
    }

    fn punct(&mut self, p: &'static str) -> Result<(), SpecError> {
        match self.peek().0 {
            Tok::Punct(q) if q == p => {
                self.next();
                Ok(())
            }
            _ => self.error(&format!("`{p}`")),
        }
    }

    fn keyword(&mut self, k: &str) -> Result<(), SpecError> {
        match self.peek().0 {
            Tok::Ident(s) if s == k => {
                self.next();
                Ok(())
            }
            Tok::Int(s) if s == k => {
                self.next();
                Ok(())
            }
            _ => self.error(&format!("`{k}`")),
        }
    }

    fn int(&mut self) -> Result<(u64, usize), SpecError> {
        match self.peek() {
            (Tok::Int(s), start, _) => match s.parse() {
                Ok(v) => {
                    self.next();
                    Ok((v, start))
                }
                Err(_) => self.error("an integer that fits in 64 bits"),
            },
            _ => self.error("an integer"),
        }
    }

    fn expect_end(&mut self) -> Result<(), SpecError> {
        match self.peek().0 {
            Tok::End => Ok(()),
            _ => self.error("end of input"),
        }
    }

    fn spec(&mut self) -> Result<WordSpec, SpecError> {
        const EXPECTED: &str =
            "a word name, `morphic:`, `sturmian:`, `double(`, `complement(` or `shift(`";
        let (tok, start, _) = self.peek();
        let Tok::Ident(name) = tok else {
            return self.error(EXPECTED);
        };
        if let Some(named) = NamedWord::from_name(name) {
            self.next();
            return Ok(WordSpec::named(named));
        }
        match name {
            "morphic" => {
                self.next();
                self.morphic(start)
            }
            "sturmian" => {
                self.next();
                self.sturmian(start)
            }
            "double" | "complement" => {
                self.next();
                self.punct("(")?;
                let inner = self.spec()?;
                self.punct(")")?;
                Ok(if name == "double" {
                    inner.double()
                } else {
                    inner.complement()
                })
            }
            "shift" => {
                self.next();
                self.punct("(")?;
                let (offset, at) = self.int()?;
                let offset = usize::try_from(offset).map_err(|_| SpecError::Syntax {
                    position: at,
                    expected: "a shift that fits in usize".into(),
                    found: offset.to_string(),
                })?;
                self.punct(",")?;
                let inner = self.spec()?;
                self.punct(")")?;
                Ok(inner.shift(offset))
            }
            _ => self.error(EXPECTED),
        }
    }

    fn bits(&mut self) -> Result<Vec<Letter>, SpecError> {
        let mut out = Vec::new();
        while let (Tok::Int(s), _, _) = self.peek() {
            match parse_letters(s) {
                Some(l) => out.extend(l),
                None => return self.error("binary letters `0`/`1`"),
            }
            self.next();
        }
        if out.is_empty() {
            return self.error("binary letters `0`/`1`");
        }
        Ok(out)
    }

    fn morphic(&mut self, start: usize) -> Result<WordSpec, SpecError> {
        self.punct(":")?;
        self.keyword("0")?;
        self.punct("->")?;
        let zero = self.bits()?;
        self.punct(",")?;
        self.keyword("1")?;
        self.punct("->")?;
        let one = self.bits()?;
        WordSpec::morphic(zero, one).map_err(|source| SpecError::Invalid {
            position: start,
            source,
        })
    }

    fn sturmian(&mut self, start: usize) -> Result<WordSpec, SpecError> {
        self.punct(":")?;
        self.keyword("cf")?;
        self.punct("=")?;
        self.punct("[")?;
        let mut directive = Vec::new();
        loop {
            let (v, at) = self.int()?;
            let v = u32::try_from(v).map_err(|_| SpecError::Syntax {
                position: at,
                expected: "a partial quotient that fits in 32 bits".into(),
                found: v.to_string(),
            })?;
            directive.push(v);
            match self.peek().0 {
                Tok::Punct(",") => {
                    self.next();
                }
                Tok::Punct("]") => {
                    self.next();
                    break;
                }
                _ => return self.error("`,` or `]`"),
            }
        }
        WordSpec::sturmian(directive).map_err(|source| SpecError::Invalid {
            position: start,
            source,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_and_wrappers() {
        assert_eq!(
            parse_spec("double(fibonacci)").unwrap(),
            WordSpec::fibonacci().double()
        );
        assert_eq!(
            parse_spec(" shift ( 3 , complement(thue-morse) ) ").unwrap(),
            WordSpec::thue_morse().complement().shift(3)
        );
        assert_eq!(
            parse_spec("period-doubling").unwrap(),
            WordSpec::period_doubling()
        );
    }

    #[test]
    fn morphic_and_sturmian() {
        let tm = parse_spec("morphic:0->01,1->10").unwrap();
        assert_eq!(tm.to_string(), "morphic:0->01,1->10");
        assert_eq!(parse_spec("morphic : 0 -> 0 1 , 1 -> 1 0").unwrap(), tm);
        let s = parse_spec("sturmian:cf=[1,1,1]").unwrap();
        assert_eq!(s, WordSpec::sturmian(vec![1, 1, 1]).unwrap());
    }

    #[test]
    fn errors_carry_position_and_expectation() {
        let e = parse_spec("double(fibonacci").unwrap_err();
        assert_eq!(
            e,
            SpecError::Syntax {
                position: 16,
                expected: "`)`".into(),
                found: "end of input".into()
            }
        );
        let SpecError::Syntax { position, .. } = parse_spec("morphic:0->02,1->0").unwrap_err()
        else {
            panic!("expected a syntax error");
        };
        assert_eq!(position, 11);
        assert!(matches!(
            parse_spec("morphic:0->10,1->0"),
            Err(SpecError::Invalid { position: 0, .. })
        ));
        assert!(matches!(
            parse_spec("sturmian:cf=[0]"),
            Err(SpecError::Invalid { .. })
        ));
        assert!(matches!(
            parse_spec("fibonacci x"),
            Err(SpecError::Syntax { position: 10, .. })
        ));
        assert!(matches!(
            parse_spec(""),
            Err(SpecError::Syntax { position: 0, .. })
        ));
        assert!(matches!(
            parse_spec("tribonacci"),
            Err(SpecError::Syntax { .. })
        ));
    }
}

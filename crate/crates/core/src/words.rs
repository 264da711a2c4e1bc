//! Group words such as `x2^2 x1^-1 x0^-1` or `(x1 x0)^3 x1^-3`.

use std::fmt;
use std::str::FromStr;

use crate::band::GroupElement;
use crate::error::{Error, Result};

/// One generator letter, possibly inverted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

/// A word in the generators `x0, x1, …`, stored fully expanded.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    generator: l.generator,
                    inverse: !l.inverse,
                })
                .collect(),
        }
    }

    fn power(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.letters.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word { letters }
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    /// Evaluates the word with `x_i ↦ assignment[i]`.
    pub fn eval(&self, assignment: &[GroupElement]) -> Result<GroupElement> {
        let first = assignment
            .first()
            .ok_or_else(|| Error::Parse("empty generator assignment".into()))?;
        if let Some(m) = self.max_generator() {
            if m >= assignment.len() {
                return Err(Error::Parse(format!(
                    "word uses x{m} but only {} generators are assigned",
                    assignment.len()
                )));
            }
        }
        let inverses: Vec<GroupElement> = assignment.iter().map(GroupElement::inv).collect();
        let mut acc = GroupElement::identity(first.level())?;
        for l in &self.letters {
            let g = if l.inverse {
                &inverses[l.generator]
            } else {
                &assignment[l.generator]
            };
            acc = acc.mul(g)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("id");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "x{}", l.generator)?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace() || *b == b'*' || *b == b'.')
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err("expected integer"))
    }

    fn sequence(&mut self) -> Result<Word> {
        let mut out = Word::default();
        while let Some(b) = self.peek() {
            if b == b')' {
                break;
            }
            let factor = self.factor()?;
            out.letters.extend(factor.letters);
        }
        Ok(out)
    }

    fn factor(&mut self) -> Result<Word> {
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sequence()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                inner
            }
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                let generator = self.src[start..self.pos]
                    .parse()
                    .map_err(|_| self.err("expected generator index"))?;
                Word {
                    letters: vec![Letter {
                        generator,
                        inverse: false,
                    }],
                }
            }
            Some(b'i') if self.src[self.pos..].starts_with("id") => {
                self.pos += 2;
                Word::default()
            }
            _ => return Err(self.err("expected `x<i>`, `id` or `(`")),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.number()?;
            Ok(base.power(n))
        } else {
            Ok(base)
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let mut p = Parser {
            src: s,
            bytes: s.as_bytes(),
            pos: 0,
        };
        let w = p.sequence()?;
        if p.peek().is_some() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_powers_and_groups() {
        let w: Word = "(x1 x0)^3 x1^-3".parse().unwrap();
        assert_eq!(w.letters().len(), 9);
        assert_eq!(w.to_string(), "x1 x0 x1 x0 x1 x0 x1^-1 x1^-1 x1^-1");
        let w: Word = "(x1 x0)^-1".parse().unwrap();
        assert_eq!(w.to_string(), "x0^-1 x1^-1");
        assert_eq!("id".parse::<Word>().unwrap().letters().len(), 0);
        assert_eq!("x0*x1".parse::<Word>().unwrap().letters().len(), 2);
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["y0", "x0^", "(x0", "x0)", "x^2"] {
            assert!(bad.parse::<Word>().is_err(), "{bad}");
        }
    }

    #[test]
    fn eval_checks_arity() {
        let g = GroupElement::identity(3).unwrap();
        let w: Word = "x2".parse().unwrap();
        assert!(w.eval(&[g.clone(), g]).is_err());
    }
}

//! Recursive-descent parser for polynomial expressions in X, Y, Z, T, m with
//! coefficients in Q(r).
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := "-" factor | base ("^" integer)?
//! base   := ident | integer ("/" integer)? | "(" expr ")"
//! ident  := "X" | "Y" | "Z" | "T" | "r" | "m"
//! ```
//!
//! Unary minus binds looser than `^`, so `-X^2` is `-(X^2)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::mpoly::{MPoly, Var};
use super::nf::NFElem;
use crate::error::{Error, Result};

const MAX_EXPONENT: u32 = 256;

pub fn parse_poly(text: &str) -> Result<MPoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error(&["+", "-", "*", "^", "end of input"]));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, expected: &[&str]) -> Error {
        Error::Syntax {
            offset: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.factor()?);
        }
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let e = self.integer()?;
            let e: u32 = e.try_into().ok().filter(|&e| e <= MAX_EXPONENT).ok_or(Error::Syntax {
                offset: at,
                expected: vec![format!("exponent at most {MAX_EXPONENT}")],
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<MPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error(&[")"]));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(Error::Syntax {
                            offset: at,
                            expected: vec!["nonzero denominator".into()],
                        });
                    }
                    return Ok(MPoly::constant(NFElem::from_rational(BigRational::new(n, d))));
                }
                Ok(MPoly::constant(NFElem::from_bigint(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
                if name == "r" {
                    return Ok(MPoly::constant(NFElem::r()));
                }
                Var::from_name(name)
                    .map(MPoly::var)
                    .ok_or_else(|| Error::UnknownIdentifier {
                        offset: start,
                        name: name.to_string(),
                    })
            }
            _ => Err(self.error(&["(", "-", "integer", "identifier"])),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(&["integer"]));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("0");
        digits.parse::<BigInt>().map_err(|_| self.error(&["integer"]))
    }
}

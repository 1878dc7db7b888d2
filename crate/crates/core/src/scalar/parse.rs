//! Small recursive-descent parser for polynomial text such as `(x^2+y^2)`,
//! `3/2*x1*x2 - x3^4` or `x*y`.
//!
//! Grammar:
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ('+' | '-') factor | atom ('^' integer)?
//! atom   := integer | variable | '(' expr ')'
//! ```
//! Division is only allowed by nonzero constants.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{Exponent, Poly};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Parses polynomial text in `n` variables (`x1..xn`, with `x`, `y`, `z` as
/// aliases of the first three).
pub fn parse_poly(text: &str, n: usize) -> Result<Poly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        n,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.factor()?;
                    let c = d.as_constant().ok_or(Error::Parse {
                        pos: at,
                        msg: "division by a non-constant".into(),
                    })?;
                    if c.is_zero() {
                        return Err(Error::Parse {
                            pos: at,
                            msg: "division by zero".into(),
                        });
                    }
                    acc = acc * Poly::constant(Rational::one() / c);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            _ => {
                let base = self.atom()?;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    let k = self.integer()?;
                    let k: u32 = k
                        .try_into()
                        .map_err(|_| self.error("exponent out of range"))?;
                    Ok(base.pow(k))
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let k = self.integer()?;
                Ok(Poly::constant(Rational::from_integer(k)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let idx = match name {
                    "x" => 0,
                    "y" => 1,
                    "z" => 2,
                    _ => name
                        .strip_prefix('x')
                        .and_then(|d| d.parse::<usize>().ok())
                        .filter(|&i| i >= 1)
                        .map(|i| i - 1)
                        .ok_or(Error::Parse {
                            pos: start,
                            msg: format!("unknown variable `{name}`"),
                        })?,
                };
                if idx >= self.n {
                    return Err(Error::Parse {
                        pos: start,
                        msg: format!("variable `{name}` out of range for {} variables", self.n),
                    });
                }
                Ok(Poly::monomial(Exponent::var(idx), Rational::one()))
            }
            _ => Err(self.error("expected number, variable or `(`")),
        }
    }
}

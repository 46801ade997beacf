//! Recursive-descent parser for the human polynomial form, e.g.
//! `z0^2*z1 + 1/2*mu*z1 - (3/2-1/3*i)*hbar`.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary)*
//! unary  := '-' unary | power
//! power  := atom ['^' ['-'] integer]
//! atom   := integer | 'i' | 'mu' | 'hbar' | 'tau' | 'z'index | '(' expr ')'
//! ```
//!
//! Division and negative powers are only allowed when the divisor is a unit
//! (a nonzero number times a power of `mu`).

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Coefficient, GaussianRational, MultiPoly, Param, ParamScalar};
use crate::{Error, Result};

pub fn parse_poly(input: &str, nvars: usize) -> Result<MultiPoly> {
    let mut p = Parser { src: input.as_bytes(), pos: 0, nvars };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

pub fn parse_param_scalar(input: &str) -> Result<ParamScalar> {
    Ok(parse_poly(input, 0)?.as_constant().expect("no variables"))
}

/// A plain number without formal parameters.
pub fn parse_scalar(input: &str) -> Result<GaussianRational> {
    parse_param_scalar(input)?
        .as_constant()
        .ok_or_else(|| Error::Parse { pos: 0, msg: format!("`{input}` is not a plain number") })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let divisor = self.unary()?;
                let inv =
                    divisor.try_inverse().ok_or(Error::Parse { pos: at, msg: "division by a non-unit".into() })?;
                acc = &acc * &inv;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let negative = self.eat(b'-');
        let at = self.pos;
        let e: u32 =
            self.integer()?.try_into().map_err(|_| Error::Parse { pos: at, msg: "exponent too large".into() })?;
        if !negative {
            return Ok(base.pow(e));
        }
        let inv = base.try_inverse().ok_or(Error::Parse { pos: at, msg: "negative power of a non-unit".into() })?;
        Ok(inv.pow(e))
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let n = self.nvars;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = BigRational::from_integer(self.integer()?);
                Ok(MultiPoly::from_scalar(n, GaussianRational::real(v)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let word = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii word");
                if word == "i" {
                    return Ok(MultiPoly::from_scalar(n, GaussianRational::i()));
                }
                if let Some(p) = Param::from_name(word) {
                    return Ok(MultiPoly::constant(n, ParamScalar::param(p)));
                }
                if let Some(idx) = word.strip_prefix('z').and_then(|d| d.parse::<usize>().ok()) {
                    if idx >= n {
                        return Err(Error::Parse {
                            pos: start,
                            msg: format!("variable {word} out of range for {n} variables"),
                        });
                    }
                    return Ok(MultiPoly::var(n, idx));
                }
                Err(Error::Parse { pos: start, msg: format!("unknown symbol `{word}`") })
            }
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

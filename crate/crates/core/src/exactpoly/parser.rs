//! Recursive-descent parser for polynomial expressions in `q`.
//!
//! ```text
//! expr   = ["-"] term { ("+" | "-") term }
//! term   = factor { "*" factor }
//! factor = atom [ "^" nat ]
//! atom   = "q" | nat | nat "/" nat | "(" expr ")"
//! ```
//!
//! Whitespace is ignored and multiplication is always explicit.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::poly::{Poly, Rational};
use crate::error::ParseError;

pub fn parse_polynomial(s: &str) -> Result<Poly, ParseError> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(&["+", "-", "*", "^", "end of input"]));
    }
    Ok(value)
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&mut self, expected: &[&str]) -> ParseError {
        let found = self.peek().map(|c| (c as char).to_string());
        ParseError::new(self.pos, expected, found)
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let negate = self.eat(b'-');
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let start = self.pos;
            let exp = self.nat()?;
            let exp = exp
                .to_u32()
                .ok_or_else(|| ParseError::new(start, &["exponent below 2^32"], Some(exp.to_string())))?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(Poly::q())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error(&[")", "+", "-", "*", "^"]));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.nat()?;
                if self.eat(b'/') {
                    let start = self.pos;
                    let den = self.nat()?;
                    if den.is_zero() {
                        return Err(ParseError::new(start, &["nonzero denominator"], Some("0".into())));
                    }
                    return Ok(Poly::constant(Rational::new(num, den)));
                }
                Ok(Poly::constant(Rational::from_integer(num)))
            }
            _ => Err(self.error(&["q", "natural number", "("])),
        }
    }

    fn nat(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(&["natural number"]));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse as an integer"))
    }
}

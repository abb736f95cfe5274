use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, ToPrimitive, Zero};

use super::poly::{Poly, Rational};
use crate::error::{Error, Result};

/// Laurent polynomial in `q^{1/2}`.
///
/// Keys are exponent numerators over the fixed denominator 2, so the key `-1`
/// stands for `q^{-1/2}`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct HalfLaurent {
    terms: BTreeMap<i64, Rational>,
}

impl HalfLaurent {
    pub fn zero() -> Self {
        HalfLaurent::default()
    }

    pub fn one() -> Self {
        HalfLaurent::monomial(Rational::one(), 0)
    }

    /// `c * q^{half_exp / 2}`.
    pub fn monomial(c: Rational, half_exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(half_exp, c);
        }
        HalfLaurent { terms }
    }

    pub fn from_poly(p: &Poly) -> Self {
        let mut out = HalfLaurent::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out.terms.insert(2 * k as i64, c.clone());
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, half_exp: i64, c: Rational) {
        let slot = self.terms.entry(half_exp).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&half_exp);
        }
    }

    pub fn pow(&self, mut k: u32) -> HalfLaurent {
        let mut base = self.clone();
        let mut acc = HalfLaurent::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `h(q^d)`: every exponent is scaled by `d`.
    pub fn substitute_power(&self, d: u32) -> HalfLaurent {
        assert!(d >= 1, "substitution degree must be positive");
        HalfLaurent { terms: self.terms.iter().map(|(&e, c)| (e * d as i64, c.clone())).collect() }
    }

    /// Succeeds only when every exponent is a nonnegative integer.
    pub fn to_polynomial(&self) -> Result<Poly> {
        if let Some((&e, _)) = self.terms.iter().find(|(&e, _)| e < 0 || e % 2 != 0) {
            return Err(Error::NotAPolynomial(format!("{self} has a term with exponent {}/2", e)));
        }
        let Some((&top, _)) = self.terms.iter().next_back() else {
            return Ok(Poly::zero());
        };
        let mut coeffs = vec![Rational::zero(); (top / 2) as usize + 1];
        for (&e, c) in &self.terms {
            coeffs[(e / 2) as usize] = c.clone();
        }
        Ok(Poly::from_coeffs(coeffs))
    }

    pub fn eval_real(&self, q: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&e, c)| c.to_f64().unwrap_or(f64::NAN) * q.powf(e as f64 / 2.0))
            .sum()
    }
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            match e {
                0 => {}
                e if e % 2 == 0 => write!(f, "*q^{}", e / 2)?,
                e => write!(f, "*q^({e}/2)")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HalfLaurent({self})")
    }
}

impl<'a> Add<&'a HalfLaurent> for &'a HalfLaurent {
    type Output = HalfLaurent;

    fn add(self, rhs: &'a HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a HalfLaurent> for &'a HalfLaurent {
    type Output = HalfLaurent;

    fn sub(self, rhs: &'a HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl<'a> Mul<&'a HalfLaurent> for &'a HalfLaurent {
    type Output = HalfLaurent;

    fn mul(self, rhs: &'a HalfLaurent) -> HalfLaurent {
        let mut out = HalfLaurent::zero();
        for (&ea, a) in &self.terms {
            for (&eb, b) in &rhs.terms {
                out.add_term(ea + eb, a * b);
            }
        }
        out
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;

    fn neg(self) -> HalfLaurent {
        HalfLaurent { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl Add for HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, rhs: HalfLaurent) -> HalfLaurent {
        &self + &rhs
    }
}

impl Sub for HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, rhs: HalfLaurent) -> HalfLaurent {
        &self - &rhs
    }
}

impl Mul for HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, rhs: HalfLaurent) -> HalfLaurent {
        &self * &rhs
    }
}

impl Neg for HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        -&self
    }
}

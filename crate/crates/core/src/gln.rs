//! Counting polynomials for `GL_n` and the identity component of the `PGL_n`
//! character stack, assembled from types, genus numbers and hook polynomials.
//!
//! A type records, for each degree `d` and partition `λ`, how many
//! irreducible polynomials of degree `d` (other than `t`) carry `λ`. Types
//! index conjugacy classes and irreducible characters of `GL_n(F_q)` alike, and
//! the count of homomorphisms from a genus-`g` surface group is
//!
//! ```text
//! |Hom(Γ_g, GL_n(F_q))| / |GL_n(F_q)| = Σ_τ A_τ(q) · H_τ(q)^{2g-2}
//! ```
//!
//! where `A_τ` counts the classes of type `τ` and `H_τ` is the codegree
//! `|G| / χ(1)` of the matching characters (up to sign).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{divisors, mobius, prime_power, totient};
use crate::error::{Error, ParseError, Result};
use crate::exactpoly::{int, HalfLaurent, Poly, Rational};
use crate::partitions::{enumerate_partitions, Partition};

/// One `(d, λ, m)` block of a type: `m` polynomials of degree `d` carry `λ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TypeEntry {
    pub degree: u32,
    pub partition: Partition,
    pub multiplicity: u32,
}

impl TypeEntry {
    fn key_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree.cmp(&other.degree).then_with(|| self.partition.cmp(&other.partition))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GlnType {
    entries: Vec<TypeEntry>,
}

impl GlnType {
    /// Sorts entries canonically; rejects repeated `(d, λ)` keys and empty blocks.
    pub fn new(mut entries: Vec<TypeEntry>) -> Result<Self> {
        entries.sort_by(TypeEntry::key_cmp);
        for e in &entries {
            if e.degree == 0 || e.multiplicity == 0 || e.partition.is_empty() {
                return Err(Error::InvalidArgument(format!("degenerate type entry {e:?}")));
            }
        }
        if entries.windows(2).any(|w| w[0].key_cmp(&w[1]).is_eq()) {
            return Err(Error::InvalidArgument("type repeats a (degree, partition) pair".into()));
        }
        Ok(GlnType { entries })
    }

    pub fn entries(&self) -> &[TypeEntry] {
        &self.entries
    }

    /// `Σ d·|λ|·m`.
    pub fn weight(&self) -> u32 {
        self.entries.iter().map(|e| e.degree * e.partition.size() * e.multiplicity).sum()
    }

    /// `T(d)`: number of polynomials of degree `d` used by the type.
    pub fn polynomials_of_degree(&self, d: u32) -> u32 {
        self.entries.iter().filter(|e| e.degree == d).map(|e| e.multiplicity).sum()
    }

    /// The type with every partition conjugated.
    pub fn conjugate(&self) -> GlnType {
        let entries = self
            .entries
            .iter()
            .map(|e| TypeEntry { partition: e.partition.conjugate(), ..e.clone() })
            .collect();
        GlnType::new(entries).expect("conjugation preserves validity")
    }

    /// The single-block type `{(n, [1], 1)}` of the regular elliptic classes.
    pub fn is_regular_elliptic(&self) -> bool {
        matches!(self.entries.as_slice(), [e] if e.partition.parts() == [1] && e.multiplicity == 1)
    }
}

/// `d:λ^m + d:λ^m + ...`, e.g. `1:[1]^2`.
impl fmt::Display for GlnType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}:{}^{}", e.degree, e.partition, e.multiplicity)?;
        }
        Ok(())
    }
}

impl FromStr for GlnType {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut entries = Vec::new();
        for block in s.split('+') {
            let block = block.trim();
            let bad = || ParseError::message(format!("malformed type block {block:?}, expected d:[parts]^m"));
            let (d, rest) = block.split_once(':').ok_or_else(bad)?;
            let (lambda, m) = rest.rsplit_once('^').ok_or_else(bad)?;
            let degree: u32 = d.trim().parse().map_err(|_| bad())?;
            let multiplicity: u32 = m.trim().parse().map_err(|_| bad())?;
            let partition: Partition = lambda.parse()?;
            entries.push(TypeEntry { degree, partition, multiplicity });
        }
        GlnType::new(entries).map_err(|e| ParseError::message(e.to_string()))
    }
}

/// Every type of weight `n`, each once, in a fixed order.
pub fn enumerate_types(n: u32) -> Vec<GlnType> {
    assert!(n >= 1, "types are enumerated for n >= 1");
    // blocks (d, λ) with d·|λ| <= n in canonical key order
    let mut blocks = Vec::new();
    for d in 1..=n {
        for size in 1..=n / d {
            for lambda in enumerate_partitions(size) {
                blocks.push((d, lambda));
            }
        }
    }
    blocks.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));

    let mut out = Vec::new();
    let mut chosen = Vec::new();
    choose_blocks(&blocks, 0, n, &mut chosen, &mut out);
    out
}

fn choose_blocks(
    blocks: &[(u32, Partition)],
    start: usize,
    remaining: u32,
    chosen: &mut Vec<TypeEntry>,
    out: &mut Vec<GlnType>,
) {
    if remaining == 0 {
        out.push(GlnType { entries: chosen.clone() });
        return;
    }
    for (i, (d, lambda)) in blocks.iter().enumerate().skip(start) {
        let w = d * lambda.size();
        for m in 1..=remaining / w {
            chosen.push(TypeEntry { degree: *d, partition: lambda.clone(), multiplicity: m });
            choose_blocks(blocks, i + 1, remaining - m * w, chosen, out);
            chosen.pop();
        }
    }
}

/// `I_d`: monic irreducible polynomials of degree `d` over `F_q`, excluding `t`.
pub fn irreducible_count(d: u32) -> Poly {
    assert!(d >= 1);
    if d == 1 {
        return Poly::from_ints(&[-1, 1]);
    }
    let mut acc = Poly::zero();
    for k in divisors(d as u64) {
        let mu = mobius(k);
        if mu != 0 {
            acc += Poly::monomial(int(mu), (d as u64 / k) as usize);
        }
    }
    acc.scale(&Rational::new(BigInt::one(), BigInt::from(d)))
}

fn factorial(m: u32) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, k| acc * k)
}

/// `A_τ`: number of conjugacy classes of `GL_n(F_q)` of type `τ`.
pub fn genus_number(tau: &GlnType) -> Poly {
    let mut degrees: Vec<u32> = tau.entries.iter().map(|e| e.degree).collect();
    degrees.dedup();
    let mut acc = Poly::one();
    for d in degrees {
        let id = irreducible_count(d);
        let t = tau.polynomials_of_degree(d);
        for i in 0..t {
            acc = acc * (&id - &Poly::from(i as i64));
        }
        let denom: BigInt = tau
            .entries
            .iter()
            .filter(|e| e.degree == d)
            .map(|e| factorial(e.multiplicity))
            .product();
        acc = acc.scale(&Rational::new(BigInt::one(), denom));
    }
    acc
}

/// `H_τ = (-1)^n q^{n²/2} ∏ H_λ(q^d)^m`.
pub fn type_hook_polynomial(tau: &GlnType) -> Result<Poly> {
    let n = tau.weight() as i64;
    let sign = if n % 2 == 0 { int(1) } else { int(-1) };
    let mut acc = HalfLaurent::monomial(sign, n * n);
    for e in &tau.entries {
        let h = e.partition.hook_polynomial().substitute_power(e.degree);
        acc = acc * h.pow(e.multiplicity);
    }
    acc.to_polynomial()
}

fn check_genus(g: u32) -> Result<()> {
    if g == 0 {
        return Err(Error::InvalidArgument("genus must be at least 1".into()));
    }
    Ok(())
}

/// `Σ_τ A_τ · H_τ^{2g-2}`, the point count of the `GL_n` character stack.
pub fn count_polynomial_gln(n: u32, g: u32) -> Result<Poly> {
    check_genus(g)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let exp = 2 * g - 2;
    let terms: Result<Vec<Poly>> = enumerate_types(n)
        .par_iter()
        .map(|tau| Ok(genus_number(tau) * type_hook_polynomial(tau)?.pow(exp)))
        .collect();
    Ok(terms?.into_iter().sum())
}

/// Number of conjugacy classes of `GL_n(F_q)` as a polynomial in `q`.
pub fn class_number_polynomial(n: u32) -> Poly {
    enumerate_types(n).iter().map(genus_number).sum()
}

/// `count_polynomial_gln(n, g) / (q-1)^{2g-1}`, the identity component of
/// the `PGL_n` character stack.
pub fn count_polynomial_pgln_identity(n: u32, g: u32) -> Result<Poly> {
    let total = count_polynomial_gln(n, g)?;
    let divisor = Poly::from_ints(&[-1, 1]).pow(2 * g - 1);
    total.div_exact(&divisor).map_err(|e| Error::Assertion(format!("PGL_{n} identity component: {e}")))
}

/// Value at `q = 1` of the identity-component polynomial, checked against
/// `φ(n)·n^{2g-3}`.
pub fn euler_characteristic_pgln_identity(n: u32, g: u32) -> Result<BigInt> {
    if g < 2 {
        return Err(Error::InvalidArgument("Euler characteristic formula needs g >= 2".into()));
    }
    let value = count_polynomial_pgln_identity(n, g)?.eval_int(1);
    let expected = BigInt::from(totient(n as u64)) * BigInt::from(n).pow(2 * g - 3);
    if !value.is_integer() || value.numer() != &expected {
        return Err(Error::Assertion(format!(
            "PGL_{n} identity component at q=1 is {value}, expected φ(n)·n^(2g-3) = {expected}"
        )));
    }
    Ok(expected)
}

/// `|GL_n(F_q)| = q^{n(n-1)/2} ∏_{k=1}^{n} (q^k - 1)`.
pub fn gln_order_polynomial(n: u32) -> Poly {
    let prod: Poly = (1..=n as usize).map(Poly::q_power_minus_one).product();
    prod.shift((n * (n.saturating_sub(1)) / 2) as usize)
}

/// Degree of the unipotent character of `GL_n(F_q)` labelled by `λ`, with
/// `(n)` the trivial character and `(1^n)` the Steinberg character.
///
/// Computed as `|GL_n| / H_τ` for the type `τ = {(1, λ, 1)}` and
/// cross-checked against the product formula in
/// [`unipotent_degree_gln_by_formula`].
pub fn unipotent_degree_gln(lambda: &Partition) -> Result<Poly> {
    let n = lambda.size();
    if n == 0 {
        return Err(Error::InvalidArgument("unipotent degree needs a nonempty partition".into()));
    }
    let tau = GlnType::new(vec![TypeEntry { degree: 1, partition: lambda.clone(), multiplicity: 1 }])?;
    let codegree = type_hook_polynomial(&tau)?;
    let via_green = gln_order_polynomial(n).div_exact(&codegree)?;
    let via_formula = unipotent_degree_gln_by_formula(lambda)?;
    if via_green != via_formula {
        return Err(Error::Assertion(format!(
            "unipotent degree for {lambda}: hook route gives {via_green}, product formula gives {via_formula}"
        )));
    }
    Ok(via_green)
}

/// Product formula with the parts taken in increasing order
/// `λ_1 <= ... <= λ_m` and `α_i = λ_i + (i - 1)`:
///
/// ```text
/// (q-1) ∏_{k=2}^{n} (q^k-1) ∏_{i<j} (q^{α_j} - q^{α_i})
/// -----------------------------------------------------------
/// q^{C(m-1,2) + C(m-2,2) + ...} ∏_i ∏_{k=1}^{α_i} (q^k - 1)
/// ```
pub fn unipotent_degree_gln_by_formula(lambda: &Partition) -> Result<Poly> {
    let n = lambda.size() as usize;
    let mut increasing: Vec<usize> = lambda.parts().iter().map(|&p| p as usize).collect();
    increasing.reverse();
    let m = increasing.len();
    let alpha: Vec<usize> = increasing.iter().enumerate().map(|(i, &l)| l + i).collect();

    let mut numer: Poly = (2..=n).map(Poly::q_power_minus_one).product();
    numer = numer * Poly::q_power_minus_one(1);
    for j in 0..m {
        for i in 0..j {
            let diff = Poly::monomial(Rational::one(), alpha[j]) - Poly::monomial(Rational::one(), alpha[i]);
            numer = numer * diff;
        }
    }
    let q_exp: usize = (0..m).map(|k| if k >= 2 { k * (k - 1) / 2 } else { 0 }).sum();
    let denom: Poly = alpha
        .iter()
        .flat_map(|&a| (1..=a).map(Poly::q_power_minus_one))
        .product::<Poly>()
        .shift(q_exp);
    numer.div_exact(&denom)
}

/// `ζ_{GL_n(F_q)}(s) = Σ_χ χ(1)^{-s} = Σ_τ A_τ(q) · (|H_τ(q)| / |G|)^s`.
pub fn zeta_gln(n: u32, q: u64, s: f64) -> Result<f64> {
    if q < 2 || prime_power(q).is_none() {
        return Err(Error::Domain(format!("q = {q} is not a prime power")));
    }
    let qr = Rational::from_integer(BigInt::from(q));
    let order = gln_order_polynomial(n).eval(&qr);
    let log_order = log_abs(&order);
    let mut total = 0.0;
    for tau in enumerate_types(n) {
        let a = genus_number(&tau).eval(&qr);
        if a.is_zero() {
            continue;
        }
        let h = type_hook_polynomial(&tau)?.eval(&qr);
        if h.is_zero() {
            return Err(Error::Domain(format!("H_τ vanishes at q = {q} for τ = {tau}")));
        }
        let a = a.to_f64().unwrap_or(f64::NAN);
        total += a * (s * (log_abs(&h) - log_order)).exp();
    }
    Ok(total)
}

pub(crate) fn log_abs(x: &Rational) -> f64 {
    fn log_int(v: &BigInt) -> f64 {
        let bits = v.bits();
        if bits < 1000 {
            v.abs().to_f64().expect("finite").ln()
        } else {
            let shift = bits - 900;
            (v.abs() >> shift).to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
    log_int(x.numer()) - log_int(x.denom())
}

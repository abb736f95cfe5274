//! Small-rank root data: closed subsystems, torsion of `X/<Φ₁>`, the modulus,
//! and order polynomials of split groups and twisted maximal tori.

mod snf;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub use snf::smith_normal_form;

use crate::error::{Error, ParseError, Result};
use crate::exactpoly::{int, Poly};

/// Largest root system accepted by the brute-force subset search.
pub const MAX_ROOTS: usize = 16;

/// Roots of a reductive group written in a fixed basis of its character
/// lattice `X`. Coroots are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub label: String,
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
}

impl RootDatum {
    pub fn new(label: impl Into<String>, rank: usize, roots: Vec<Vec<i64>>) -> Result<Self> {
        let label = label.into();
        if rank == 0 {
            return Err(Error::InvalidArgument(format!("{label}: rank must be positive")));
        }
        let mut seen = HashMap::new();
        for (i, r) in roots.iter().enumerate() {
            if r.len() != rank {
                return Err(Error::InvalidArgument(format!("{label}: root {r:?} does not have {rank} coordinates")));
            }
            if r.iter().all(|&x| x == 0) {
                return Err(Error::InvalidArgument(format!("{label}: zero vector is not a root")));
            }
            if seen.insert(r.clone(), i).is_some() {
                return Err(Error::InvalidArgument(format!("{label}: duplicate root {r:?}")));
            }
        }
        for r in &roots {
            let neg: Vec<i64> = r.iter().map(|x| -x).collect();
            if !seen.contains_key(&neg) {
                return Err(Error::InvalidArgument(format!("{label}: root {r:?} has no negative")));
            }
        }
        Ok(RootDatum { label, rank, roots })
    }

    /// Parses the datum file format: optional `label = ...`, then `rank = k`,
    /// then one root per line as space-separated integers. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut label = None;
        let mut rank = None;
        let mut roots = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = |msg: String| Error::Parse(ParseError::message(format!("line {}: {msg}", lineno + 1)));
            if let Some((key, value)) = line.split_once('=') {
                match key.trim() {
                    "rank" => {
                        rank = Some(value.trim().parse::<usize>().map_err(|_| at(format!("bad rank {value:?}")))?)
                    }
                    "label" => label = Some(value.trim().to_string()),
                    other => return Err(at(format!("unknown key {other:?}"))),
                }
                continue;
            }
            if rank.is_none() {
                return Err(at("root listed before the `rank = k` header".into()));
            }
            let v: std::result::Result<Vec<i64>, _> = line.split_whitespace().map(str::parse).collect();
            roots.push(v.map_err(|_| at(format!("bad root vector {line:?}")))?);
        }
        let rank = rank.ok_or_else(|| Error::Parse(ParseError::message("missing `rank = k` header")))?;
        RootDatum::new(label.unwrap_or_else(|| "unnamed".into()), rank, roots)
    }

    /// One of the shipped data: `sl2`, `sl3`, `sp4`, `g2`, `gl2`, `gl3`.
    pub fn builtin(name: &str) -> Option<Self> {
        let text = match name.to_ascii_lowercase().as_str() {
            "sl2" => include_str!("../../data/sl2.datum"),
            "sl3" => include_str!("../../data/sl3.datum"),
            "sp4" => include_str!("../../data/sp4.datum"),
            "g2" => include_str!("../../data/g2.datum"),
            "gl2" => include_str!("../../data/gl2.datum"),
            "gl3" => include_str!("../../data/gl3.datum"),
            _ => return None,
        };
        Some(RootDatum::parse(text).expect("shipped datum parses"))
    }

    fn index(&self) -> HashMap<&[i64], usize> {
        self.roots.iter().enumerate().map(|(i, r)| (r.as_slice(), i)).collect()
    }

    /// Rank and torsion invariant factors (those `> 1`) of `X/<S>`.
    pub fn quotient_invariants(&self, subset: &[usize]) -> (usize, Vec<BigInt>) {
        if subset.is_empty() {
            return (0, Vec::new());
        }
        let m: Vec<Vec<BigInt>> =
            subset.iter().map(|&i| self.roots[i].iter().map(|&x| BigInt::from(x)).collect()).collect();
        let diag = smith_normal_form(&m);
        let rank = diag.iter().filter(|d| !d.is_zero()).count();
        let torsion = diag.into_iter().filter(|d| d > &BigInt::one()).collect();
        (rank, torsion)
    }
}

/// All symmetric, closed subsets `S ⊆ Φ`: `S = -S`, and whenever
/// `α, β ∈ S` with `α + β ∈ Φ`, also `α + β ∈ S`. Includes `∅` and `Φ`.
/// Each subset is a sorted list of indices into `datum.roots`.
pub fn closed_subsystems(datum: &RootDatum) -> Result<Vec<Vec<usize>>> {
    if datum.roots.len() > MAX_ROOTS {
        return Err(Error::TooLarge { roots: datum.roots.len() });
    }
    let index = datum.index();
    // one representative per ± pair
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (i, r) in datum.roots.iter().enumerate() {
        let neg: Vec<i64> = r.iter().map(|x| -x).collect();
        let j = index[neg.as_slice()];
        if i < j {
            pairs.push((i, j));
        }
    }
    // sums[i][j] = index of roots[i] + roots[j] when that is a root
    let n = datum.roots.len();
    let mut sums = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            let s: Vec<i64> = datum.roots[i].iter().zip(&datum.roots[j]).map(|(a, b)| a + b).collect();
            sums[i][j] = index.get(s.as_slice()).copied();
        }
    }

    let mut out = Vec::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        let mut member = vec![false; n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                member[i] = true;
                member[j] = true;
            }
        }
        let closed = (0..n).filter(|&i| member[i]).all(|i| {
            (0..n).filter(|&j| member[j]).all(|j| sums[i][j].is_none_or(|s| member[s]))
        });
        if closed {
            out.push((0..n).filter(|&i| member[i]).collect());
        }
    }
    Ok(out)
}

/// Order of the torsion subgroup of `X/<S>`.
pub fn torsion_order(datum: &RootDatum, subset: &[usize]) -> BigInt {
    datum.quotient_invariants(subset).1.into_iter().product()
}

/// Exponent of the torsion subgroup of `X/<S>` (its largest invariant factor).
pub fn torsion_exponent(datum: &RootDatum, subset: &[usize]) -> BigInt {
    datum.quotient_invariants(subset).1.into_iter().max().unwrap_or_else(BigInt::one)
}

/// lcm over closed subsystems `Φ₁` of the exponent of the torsion of `X/<Φ₁>`.
pub fn modulus(datum: &RootDatum) -> Result<BigInt> {
    Ok(closed_subsystems(datum)?
        .iter()
        .map(|s| torsion_exponent(datum, s))
        .fold(BigInt::one(), |acc, e| acc.lcm(&e)))
}

/// Data determining the order polynomial of a split connected reductive group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitGroupShape {
    pub positive_root_count: u32,
    /// Degrees of the basic invariants of the Weyl group, one per semisimple rank.
    pub invariant_degrees: Vec<u32>,
    pub central_torus_rank: u32,
}

/// `q^{|Φ⁺|} (q-1)^{central rank} ∏ (q^{d_i} - 1)`.
pub fn order_polynomial_split(shape: &SplitGroupShape) -> Poly {
    let prod: Poly = shape.invariant_degrees.iter().map(|&d| Poly::q_power_minus_one(d as usize)).product();
    (prod * Poly::q_power_minus_one(1).pow(shape.central_torus_rank)).shift(shape.positive_root_count as usize)
}

/// An automorphism of the character lattice, given by its integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    matrix: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn new(matrix: Vec<Vec<i64>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("Weyl element must be a nonempty square matrix".into()));
        }
        let det = integer_det(&matrix);
        if det != 1 && det != -1 {
            return Err(Error::InvalidArgument(format!("Weyl element has determinant {det}, not ±1")));
        }
        Ok(WeylElement { matrix })
    }

    pub fn identity(rank: usize) -> Self {
        WeylElement { matrix: (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect() }
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// Parses rows separated by `;`, entries by whitespace: `0 -1 ; 1 0`.
    pub fn parse(text: &str) -> Result<Self> {
        let rows: std::result::Result<Vec<Vec<i64>>, _> = text
            .split(';')
            .map(|row| row.split_whitespace().map(str::parse::<i64>).collect())
            .collect();
        let rows = rows.map_err(|_| Error::Parse(ParseError::message(format!("bad matrix {text:?}"))))?;
        WeylElement::new(rows)
    }
}

fn integer_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * integer_det(&minor)
        })
        .sum()
}

fn poly_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][j] * &poly_det(&minor);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// `det(q·I - w)`: the order of the maximal torus twisted by `w`.
pub fn torus_order_polynomial(w: &WeylElement) -> Poly {
    let n = w.matrix.len();
    let m: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let entry = Poly::from(-w.matrix[i][j]);
                    if i == j {
                        entry + Poly::q()
                    } else {
                        entry
                    }
                })
                .collect()
        })
        .collect();
    poly_det(&m)
}

/// Degree of `det(q·I - w)` is the rank; its value at `q = 0` is `±det w`.
pub fn is_integral_monic(p: &Poly) -> bool {
    p.has_integer_coeffs() && p.leading_coeff() == Some(&int(1))
}

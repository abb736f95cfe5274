//! Genus tables of rank ≤ 2 groups: loading, validation, the counting
//! polynomial, representation ζ-functions and geometric invariants.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::arith::prime_power;
use crate::error::{Error, ParseError, Result};
use crate::exactpoly::{int, parse_polynomial, Poly, Rational};
use crate::gln::log_abs;
use crate::rootdata::{order_polynomial_split, torus_order_polynomial, SplitGroupShape, WeylElement};

/// Names of the tables compiled into the library.
pub const BUILTIN_TABLES: [&str; 4] = ["pgl2", "pgl3", "so5", "g2"];

/// One genus `ξ = ([Φ₁], [w])` of semisimple classes in the dual group.
#[derive(Clone, Debug, PartialEq)]
pub struct GenusEntry {
    pub label: String,
    /// `|Φ⁺| - |Φ₁⁺|`.
    pub r: u32,
    pub subsystem_rank: u32,
    pub centralizer_order: Poly,
    pub genus_number: Poly,
    pub unipotent_degrees: Vec<Poly>,
    /// Listed in the table but never realized as a centralizer; contributes nothing.
    pub vacuous: bool,
    /// Split shape of the centralizer, when the row has trivial twist.
    pub shape: Option<SplitGroupShape>,
    /// Twisting element, for rows with empty subsystem.
    pub weyl_element: Option<WeylElement>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenusTable {
    pub name: String,
    pub modulus: u64,
    pub residue: u64,
    pub order: Poly,
    pub dim: u32,
    pub rank: u32,
    pub dual_center_dim: u32,
    pub pi1_derived: u64,
    pub entries: Vec<GenusEntry>,
}

/// `(degree, leading coefficient, value at 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub dimension: usize,
    pub components: Rational,
    pub euler: Rational,
}

impl fmt::Display for Invariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dimension {}, components {}, euler {}", self.dimension, self.components, self.euler)
    }
}

pub fn invariants(p: &Poly) -> Result<Invariants> {
    let dimension = p.degree().ok_or(Error::ZeroPolynomial)?;
    Ok(Invariants {
        dimension,
        components: p.leading_coeff().cloned().ok_or(Error::ZeroPolynomial)?,
        euler: p.eval_int(1),
    })
}

impl GenusTable {
    pub fn builtin(name: &str) -> Option<GenusTable> {
        let text = builtin_text(name)?;
        Some(parse_genus_table(text).expect("shipped table is valid"))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<GenusTable> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
        parse_genus_table(&text)
    }

    /// Entries that actually occur.
    pub fn live_entries(&self) -> impl Iterator<Item = &GenusEntry> {
        self.entries.iter().filter(|e| !e.vacuous)
    }

    /// `Σ_ξ genus_number · #unipotent degrees`.
    pub fn class_number_polynomial(&self) -> Poly {
        self.live_entries()
            .map(|e| e.genus_number.scale(&int(e.unipotent_degrees.len() as i64)))
            .sum()
    }

    fn check_q(&self, q: u64, force_residue: bool) -> Result<()> {
        if q < 2 || prime_power(q).is_none() {
            return Err(Error::Domain(format!("q = {q} is not a prime power")));
        }
        if !force_residue && q % self.modulus != self.residue {
            return Err(Error::ResidueMismatch { q, modulus: self.modulus, residue: self.residue });
        }
        Ok(())
    }
}

/// Text of a shipped table, looked up by name or file name (`g2`, `g2.genus`).
pub fn builtin_text(name: &str) -> Option<&'static str> {
    let stem = name.trim_end_matches(".genus").to_ascii_lowercase();
    Some(match stem.as_str() {
        "pgl2" => include_str!("../../data/pgl2.genus"),
        "pgl3" => include_str!("../../data/pgl3.genus"),
        "so5" => include_str!("../../data/so5.genus"),
        "g2" => include_str!("../../data/g2.genus"),
        _ => return None,
    })
}

/// `Σ_ξ q^{r(ξ)(2g-2)} · genus_number_ξ · Σ_ρ (‖G_ξ‖ / Deg_ξ(ρ))^{2g-2}`.
pub fn count_polynomial_table(table: &GenusTable, g: u32) -> Result<Poly> {
    if g == 0 {
        return Err(Error::InvalidArgument("genus must be at least 1".into()));
    }
    let e = 2 * g - 2;
    let mut total = Poly::zero();
    for entry in table.live_entries() {
        let mut inner = Poly::zero();
        for deg in &entry.unipotent_degrees {
            inner += entry.centralizer_order.div_exact(deg)?.pow(e);
        }
        total += (&entry.genus_number * &inner).shift((entry.r * e) as usize);
    }
    Ok(total)
}

/// `Σ_ξ q^{r s} · genus_number(q) · Σ_ρ (‖G_ξ‖(q) / Deg(q))^s`, i.e. `Σ_χ (|G| / χ(1))^s`.
pub fn xi_table(table: &GenusTable, q: u64, s: f64, force_residue: bool) -> Result<f64> {
    table.check_q(q, force_residue)?;
    weighted_sum(table, q, s, 0.0)
}

/// `ζ(s) = Σ_χ χ(1)^{-s}` over the irreducible characters of `G(F_q)`.
pub fn zeta_table(table: &GenusTable, q: u64, s: f64, force_residue: bool) -> Result<f64> {
    table.check_q(q, force_residue)?;
    let order = table.order.eval(&Rational::from_integer(BigInt::from(q)));
    if order.is_zero() {
        return Err(Error::Domain(format!("group order vanishes at q = {q}")));
    }
    weighted_sum(table, q, s, log_abs(&order))
}

fn weighted_sum(table: &GenusTable, q: u64, s: f64, log_norm: f64) -> Result<f64> {
    let qr = Rational::from_integer(BigInt::from(q));
    let log_q = (q as f64).ln();
    let mut total = 0.0;
    for entry in table.live_entries() {
        let a = entry.genus_number.eval(&qr);
        if a.is_zero() {
            continue;
        }
        let cent = entry.centralizer_order.eval(&qr);
        let mut inner = 0.0;
        for deg in &entry.unipotent_degrees {
            let d = deg.eval(&qr);
            if d.is_zero() || cent.is_zero() {
                return Err(Error::Domain(format!("{}: degree or centralizer vanishes at q = {q}", entry.label)));
            }
            let log_ratio = log_abs(&cent) - log_abs(&d) + entry.r as f64 * log_q - log_norm;
            inner += (s * log_ratio).exp();
        }
        total += a.to_f64().unwrap_or(f64::NAN) * inner;
    }
    Ok(total)
}

#[derive(Default)]
struct RawBlock {
    line: usize,
    pairs: Vec<(String, String, usize)>,
}

impl RawBlock {
    fn take(&mut self, key: &str) -> Option<(String, usize)> {
        let i = self.pairs.iter().position(|(k, _, _)| k == key)?;
        let (_, v, line) = self.pairs.remove(i);
        Some((v, line))
    }

    fn missing(&self, section: &str, key: &str) -> Error {
        Error::Parse(ParseError::message(format!(
            "line {}: [{section}] block is missing key `{key}`",
            self.line
        )))
    }

    fn required(&mut self, section: &str, key: &str) -> Result<(String, usize)> {
        self.take(key).ok_or_else(|| self.missing(section, key))
    }
}

fn value_error(line: usize, key: &str, what: &str, value: &str) -> Error {
    Error::Parse(ParseError::message(format!("line {line}: `{key}` expects {what}, got {value:?}")))
}

fn parse_num<T: std::str::FromStr>(key: &str, (value, line): (String, usize)) -> Result<T> {
    value.trim().parse().map_err(|_| value_error(line, key, "a nonnegative integer", &value))
}

fn parse_poly(key: &str, (value, line): (String, usize)) -> Result<Poly> {
    parse_polynomial(&value).map_err(|e| Error::Parse(e.with_context(format!("line {line}, key `{key}`"))))
}

fn parse_u32_list(key: &str, (value, line): (String, usize)) -> Result<Vec<u32>> {
    value
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| value_error(line, key, "a list of positive integers", &value)))
        .collect()
}

fn split_blocks(text: &str) -> Result<(RawBlock, Vec<RawBlock>)> {
    let mut group: Option<RawBlock> = None;
    let mut genera: Vec<RawBlock> = Vec::new();
    let mut in_group = false;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match line {
            "[group]" => {
                if group.is_some() {
                    return Err(Error::Parse(ParseError::message(format!("line {lineno}: second [group] block"))));
                }
                group = Some(RawBlock { line: lineno, pairs: Vec::new() });
                in_group = true;
                continue;
            }
            "[genus]" => {
                if group.is_none() {
                    return Err(Error::Parse(ParseError::message(format!(
                        "line {lineno}: [genus] block before [group]"
                    ))));
                }
                genera.push(RawBlock { line: lineno, pairs: Vec::new() });
                in_group = false;
                continue;
            }
            _ => {}
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Parse(ParseError::message(format!("line {lineno}: expected `key = value`, got {line:?}"))));
        };
        let block = if in_group { group.as_mut() } else { genera.last_mut() };
        let Some(block) = block else {
            return Err(Error::Parse(ParseError::message(format!("line {lineno}: key outside any block"))));
        };
        let key = key.trim().to_string();
        if block.pairs.iter().any(|(k, _, _)| *k == key) {
            return Err(Error::Parse(ParseError::message(format!("line {lineno}: duplicate key `{key}`"))));
        }
        block.pairs.push((key, value.trim().to_string(), lineno));
    }
    let group = group.ok_or_else(|| Error::Parse(ParseError::message("no [group] block")))?;
    Ok((group, genera))
}

fn reject_unknown(block: &RawBlock, section: &str) -> Result<()> {
    match block.pairs.first() {
        Some((k, _, line)) => Err(Error::Parse(ParseError::message(format!("line {line}: unknown key `{k}` in [{section}]")))),
        None => Ok(()),
    }
}

fn parse_entry(mut b: RawBlock) -> Result<GenusEntry> {
    let (label, _) = b.required("genus", "label")?;
    let vacuous = match b.take("vacuous") {
        None => false,
        Some((v, line)) => match v.as_str() {
            "true" => true,
            "false" => false,
            _ => return Err(value_error(line, "vacuous", "true or false", &v)),
        },
    };
    if vacuous {
        // remaining keys are allowed but carry no information
        return Ok(GenusEntry {
            label,
            r: 0,
            subsystem_rank: 0,
            centralizer_order: Poly::zero(),
            genus_number: Poly::zero(),
            unipotent_degrees: Vec::new(),
            vacuous: true,
            shape: None,
            weyl_element: None,
        });
    }
    let r = parse_num("r", b.required("genus", "r")?)?;
    let subsystem_rank = parse_num("subsystem_rank", b.required("genus", "subsystem_rank")?)?;
    let centralizer_order = parse_poly("centralizer_order", b.required("genus", "centralizer_order")?)?;
    let genus_number = parse_poly("genus_number", b.required("genus", "genus_number")?)?;
    let (degs, line) = b.required("genus", "unipotent_degrees")?;
    let unipotent_degrees = degs
        .split(';')
        .map(|d| parse_poly("unipotent_degrees", (d.to_string(), line)))
        .collect::<Result<Vec<_>>>()?;

    let shape_keys = [b.take("shape_positive_roots"), b.take("shape_degrees"), b.take("shape_central_rank")];
    let shape = match shape_keys {
        [None, None, None] => None,
        [Some(p), Some(d), Some(c)] => Some(SplitGroupShape {
            positive_root_count: parse_num("shape_positive_roots", p)?,
            invariant_degrees: parse_u32_list("shape_degrees", d)?,
            central_torus_rank: parse_num("shape_central_rank", c)?,
        }),
        _ => {
            return Err(Error::Parse(ParseError::message(format!(
                "line {}: shape keys must be given together",
                b.line
            ))))
        }
    };
    let weyl_element = match b.take("weyl_element") {
        None => None,
        Some((v, line)) => {
            Some(WeylElement::parse(&v).map_err(|e| Error::Parse(ParseError::message(format!("line {line}: {e}"))))?)
        }
    };
    reject_unknown(&b, "genus")?;
    Ok(GenusEntry {
        label,
        r,
        subsystem_rank,
        centralizer_order,
        genus_number,
        unipotent_degrees,
        vacuous: false,
        shape,
        weyl_element,
    })
}

/// Parses and fully validates a genus table file.
pub fn parse_genus_table(text: &str) -> Result<GenusTable> {
    let (mut g, blocks) = split_blocks(text)?;
    let table = GenusTable {
        name: g.required("group", "name")?.0,
        modulus: parse_num("modulus", g.required("group", "modulus")?)?,
        residue: parse_num("residue", g.required("group", "residue")?)?,
        order: parse_poly("order", g.required("group", "order")?)?,
        dim: parse_num("dim", g.required("group", "dim")?)?,
        rank: parse_num("rank", g.required("group", "rank")?)?,
        dual_center_dim: parse_num("dual_center_dim", g.required("group", "dual_center_dim")?)?,
        pi1_derived: parse_num("pi1_derived", g.required("group", "pi1_derived")?)?,
        entries: blocks.into_iter().map(parse_entry).collect::<Result<_>>()?,
    };
    reject_unknown(&g, "group")?;
    validate(&table)?;
    Ok(table)
}

fn fail(table: &GenusTable, label: &str, rule: &'static str, detail: String) -> Error {
    Error::Validation { table: table.name.clone(), label: label.to_string(), rule, detail }
}

/// Load-time checks. Rule names appear in the resulting errors.
pub fn validate(t: &GenusTable) -> Result<()> {
    let group = "[group]";
    if t.modulus == 0 || t.residue >= t.modulus {
        return Err(fail(t, group, "residue", format!("need 0 <= residue < modulus, got {} mod {}", t.residue, t.modulus)));
    }
    if t.pi1_derived == 0 {
        return Err(fail(t, group, "pi1_derived", "must be positive".into()));
    }
    if t.order.degree() != Some(t.dim as usize) {
        return Err(fail(t, group, "dimension", format!("order {} does not have degree {}", t.order, t.dim)));
    }
    if t.entries.is_empty() {
        return Err(fail(t, group, "entries", "no [genus] blocks".into()));
    }
    let mut labels = HashSet::new();
    for e in &t.entries {
        if !labels.insert(e.label.as_str()) {
            return Err(fail(t, &e.label, "distinct_labels", "label repeated".into()));
        }
        if e.vacuous {
            continue;
        }
        let l = e.label.as_str();
        if e.unipotent_degrees.is_empty() {
            return Err(fail(t, l, "unipotent_degrees", "list is empty".into()));
        }
        let expected_deg = t.rank.checked_sub(e.subsystem_rank).ok_or_else(|| {
            fail(t, l, "degree", format!("subsystem rank {} exceeds rank {}", e.subsystem_rank, t.rank))
        })?;
        if e.genus_number.degree() != Some(expected_deg as usize) {
            return Err(fail(
                t,
                l,
                "degree",
                format!("genus number {} should have degree {expected_deg}", e.genus_number),
            ));
        }
        let cdeg = e.centralizer_order.degree().unwrap_or(0) as i64;
        if 2 * e.r as i64 + cdeg != t.dim as i64 {
            return Err(fail(
                t,
                l,
                "r_value",
                format!("r = {} but (dim - deg centralizer)/2 = {}/2", e.r, t.dim as i64 - cdeg),
            ));
        }
        if e.r == 0 && e.centralizer_order != t.order {
            return Err(fail(t, l, "group_order", format!("centralizer {} differs from group order", e.centralizer_order)));
        }
        for d in &e.unipotent_degrees {
            if let Err(err) = e.centralizer_order.div_exact(d) {
                return Err(fail(t, l, "division", err.to_string()));
            }
        }
        if let Some(shape) = &e.shape {
            if shape.invariant_degrees.len() != e.subsystem_rank as usize {
                return Err(fail(t, l, "split_order", "one invariant degree per subsystem rank".into()));
            }
            let rebuilt = order_polynomial_split(shape);
            if rebuilt != e.centralizer_order {
                return Err(fail(t, l, "split_order", format!("shape gives {rebuilt}, table has {}", e.centralizer_order)));
            }
        }
        if let Some(w) = &e.weyl_element {
            if e.subsystem_rank != 0 {
                return Err(fail(t, l, "torus_order", "weyl_element given for a row with nonempty subsystem".into()));
            }
            if w.matrix().len() != t.rank as usize {
                return Err(fail(t, l, "torus_order", format!("matrix is not {0}x{0}", t.rank)));
            }
            let rebuilt = torus_order_polynomial(w);
            if rebuilt != e.centralizer_order {
                return Err(fail(t, l, "torus_order", format!("det(qI - w) = {rebuilt}, table has {}", e.centralizer_order)));
            }
        }
    }
    let classes = t.class_number_polynomial();
    if classes.degree() != Some(t.rank as usize) || classes.leading_coeff() != Some(&int(1)) {
        return Err(fail(
            t,
            group,
            "class_number",
            format!("class number polynomial {classes} should be monic of degree {}", t.rank),
        ));
    }
    Ok(())
}

/// Evaluates an integer-valued polynomial at `q`, failing unless the value is an integer.
pub fn eval_integer(p: &Poly, q: i64) -> Result<BigInt> {
    let v = p.eval_int(q);
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(Error::Assertion(format!("{p} is not integral at q = {q}: {v}")))
    }
}

/// Convenience used by tests and the CLI: `|x| < 1e-6` style closeness to an integer.
pub fn nearest_integer(x: f64) -> Option<i64> {
    let r = x.round();
    ((x - r).abs() < 1e-6 * x.abs().max(1.0)).then(|| r.to_i64()).flatten()
}

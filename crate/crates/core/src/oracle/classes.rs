use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::group::{GroupKind, GroupTable};
use crate::error::{Error, Result};

/// Above this order, orbits are closed under a generating set instead of
/// conjugating by every element.
pub const FULL_CONJUGATION_LIMIT: usize = 5000;

/// Conjugacy classes of a [`GroupTable`]. Class 0 contains the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassData {
    pub class_of: Vec<u32>,
    pub sizes: Vec<u64>,
    pub reps: Vec<u32>,
    pub inverse_class: Vec<u32>,
}

impl ClassData {
    pub fn compute(g: &GroupTable) -> ClassData {
        let conjugators: Vec<u32> =
            if g.len() <= FULL_CONJUGATION_LIMIT { (0..g.len() as u32).collect() } else { g.generators() };
        let full = g.len() <= FULL_CONJUGATION_LIMIT;
        let mut class_of = vec![u32::MAX; g.len()];
        let mut sizes = Vec::new();
        let mut reps = Vec::new();
        for x in 0..g.len() as u32 {
            if class_of[x as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            class_of[x as usize] = id;
            let mut size = 1u64;
            let mut stack = vec![x];
            while let Some(y) = stack.pop() {
                for &a in &conjugators {
                    let z = g.conjugate(a, y);
                    if class_of[z as usize] == u32::MAX {
                        class_of[z as usize] = id;
                        size += 1;
                        if !full {
                            stack.push(z);
                        }
                    }
                }
            }
            sizes.push(size);
        }
        let inverse_class = reps.iter().map(|&r| class_of[g.inverse(r) as usize]).collect();
        ClassData { class_of, sizes, reps, inverse_class }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn centralizer_order(&self, class: u32, group_order: u64) -> u64 {
        group_order / self.sizes[class as usize]
    }

    /// One line per class: the representative's matrix key and the class size.
    pub fn to_cache_text(&self, g: &GroupTable) -> String {
        let mut out = format!("# conjugacy classes\nkind = {}\nn = {}\nq = {}\n", g.kind(), g.n(), g.q());
        for (c, &r) in self.reps.iter().enumerate() {
            out.push_str(&format!("{} {}\n", g.key(r), self.sizes[c]));
        }
        out
    }

    /// Rebuilds class data from a cache written by [`ClassData::to_cache_text`],
    /// checking it against the group.
    pub fn from_cache_text(g: &GroupTable, text: &str) -> Result<ClassData> {
        let bad = |msg: String| Error::InvalidArgument(format!("class cache: {msg}"));
        let mut header = (None, None, None);
        let mut listed: Vec<(u32, u64)> = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            if let Some((k, v)) = line.split_once('=') {
                let v = v.trim();
                match k.trim() {
                    "kind" => header.0 = Some(v.parse::<GroupKind>()?),
                    "n" => header.1 = Some(v.parse::<usize>().map_err(|_| bad(format!("bad n {v:?}")))?),
                    "q" => header.2 = Some(v.parse::<u64>().map_err(|_| bad(format!("bad q {v:?}")))?),
                    other => return Err(bad(format!("unknown key {other:?}"))),
                }
                continue;
            }
            let mut it = line.split_whitespace();
            let (Some(key), Some(size), None) = (it.next(), it.next(), it.next()) else {
                return Err(bad(format!("bad line {line:?}")));
            };
            let key: u64 = key.parse().map_err(|_| bad(format!("bad key {key:?}")))?;
            let size: u64 = size.parse().map_err(|_| bad(format!("bad size {size:?}")))?;
            let idx = g.index_of_key(key).ok_or_else(|| bad(format!("{key} is not a group element")))?;
            listed.push((idx, size));
        }
        if header != (Some(g.kind()), Some(g.n()), Some(g.q())) {
            return Err(bad("header does not match the group".into()));
        }
        let fresh = ClassData::compute(g);
        if listed.len() != fresh.len() {
            return Err(bad(format!("{} classes listed, group has {}", listed.len(), fresh.len())));
        }
        let mut reps = Vec::with_capacity(listed.len());
        let mut sizes = Vec::with_capacity(listed.len());
        let mut relabel = vec![u32::MAX; fresh.len()];
        for (i, &(idx, size)) in listed.iter().enumerate() {
            let c = fresh.class_of[idx as usize];
            if relabel[c as usize] != u32::MAX {
                return Err(bad(format!("two listed representatives are conjugate (line {})", i + 1)));
            }
            if fresh.sizes[c as usize] != size {
                return Err(bad(format!("class of {} has size {}, not {size}", g.key(idx), fresh.sizes[c as usize])));
            }
            relabel[c as usize] = i as u32;
            reps.push(idx);
            sizes.push(size);
        }
        let class_of: Vec<u32> = fresh.class_of.iter().map(|&c| relabel[c as usize]).collect();
        let inverse_class = reps.iter().map(|&r| class_of[g.inverse(r) as usize]).collect();
        Ok(ClassData { class_of, sizes, reps, inverse_class })
    }
}

/// Integer-valued class function, indexed by class id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<BigInt>,
}

impl ClassFunction {
    /// `Σ_c |c| f(c)`.
    pub fn total(&self, classes: &ClassData) -> BigInt {
        self.values.iter().zip(&classes.sizes).map(|(v, &s)| v * BigInt::from(s)).sum()
    }
}

/// `N(z) = #{(x, y) : [x, y] = z} = Σ_x |C(x)| · 1{x z ~ x}`.
pub fn commutator_class_function(g: &GroupTable, c: &ClassData) -> ClassFunction {
    let order = g.order();
    let values = c
        .reps
        .par_iter()
        .map(|&z| {
            let mut acc: u128 = 0;
            for x in 0..g.len() as u32 {
                let cx = c.class_of[x as usize];
                if c.class_of[g.mul(x, z) as usize] == cx {
                    acc += c.centralizer_order(cx, order) as u128;
                }
            }
            BigInt::from(acc)
        })
        .collect();
    ClassFunction { values }
}

/// Class multiplication data: `m[c][a][b] = #{w : w ∈ a, w^{-1} rep_c ∈ b}`.
pub struct ClassAlgebra {
    k: usize,
    counts: Vec<u64>,
}

impl ClassAlgebra {
    pub fn compute(g: &GroupTable, c: &ClassData) -> ClassAlgebra {
        let k = c.len();
        let blocks: Vec<Vec<u64>> = c
            .reps
            .par_iter()
            .map(|&z| {
                let mut block = vec![0u64; k * k];
                for w in 0..g.len() as u32 {
                    let a = c.class_of[w as usize] as usize;
                    let b = c.class_of[g.mul(g.inverse(w), z) as usize] as usize;
                    block[a * k + b] += 1;
                }
                block
            })
            .collect();
        ClassAlgebra { k, counts: blocks.concat() }
    }

    /// `(f * h)(z) = Σ_w f(w) h(w^{-1} z)`.
    pub fn convolve(&self, f: &ClassFunction, h: &ClassFunction) -> ClassFunction {
        let k = self.k;
        let values = (0..k)
            .into_par_iter()
            .map(|c| {
                let block = &self.counts[c * k * k..(c + 1) * k * k];
                let mut acc = BigInt::zero();
                for a in 0..k {
                    if f.values[a].is_zero() {
                        continue;
                    }
                    let mut inner = BigInt::zero();
                    for b in 0..k {
                        let m = block[a * k + b];
                        if m != 0 {
                            inner += &h.values[b] * BigInt::from(m);
                        }
                    }
                    acc += &f.values[a] * inner;
                }
                acc
            })
            .collect();
        ClassFunction { values }
    }
}

/// `N^{*g}` as a class function; its value at the identity is `|Hom(Γ_g, G)|`.
pub fn commutator_power(algebra: &ClassAlgebra, n: &ClassFunction, g: u32) -> ClassFunction {
    let mut f = n.clone();
    for _ in 1..g {
        f = algebra.convolve(&f, n);
    }
    f
}

/// `|Hom(Γ_g, G)|`.
pub fn hom_count(group: &GroupTable, c: &ClassData, n: &ClassFunction, g: u32) -> Result<BigInt> {
    if g == 0 {
        return Err(Error::InvalidArgument("genus must be at least 1".into()));
    }
    if g == 1 {
        return Ok(n.values[0].clone());
    }
    let algebra = ClassAlgebra::compute(group, c);
    Ok(commutator_power(&algebra, n, g).values[0].clone())
}

/// `|Hom(Γ_g, G)| / |G|`.
pub fn groupoid_count(group: &GroupTable, c: &ClassData, n: &ClassFunction, g: u32) -> Result<BigRational> {
    Ok(BigRational::new(hom_count(group, c, n, g)?, BigInt::from(group.order())))
}

/// A built group with its classes, commutator function and class algebra,
/// ready for repeated counts.
pub struct Oracle {
    pub group: GroupTable,
    pub classes: ClassData,
    pub commutator: ClassFunction,
    algebra: Option<ClassAlgebra>,
}

impl Oracle {
    pub fn new(kind: GroupKind, n: u32, q: u64, cap: u64) -> Result<Oracle> {
        let group = GroupTable::build_with_cap(kind, n, q, cap)?;
        let classes = ClassData::compute(&group);
        let commutator = commutator_class_function(&group, &classes);
        Ok(Oracle { group, classes, commutator, algebra: None })
    }

    pub fn hom_count(&mut self, g: u32) -> Result<BigInt> {
        if g == 0 {
            return Err(Error::InvalidArgument("genus must be at least 1".into()));
        }
        if g == 1 {
            return Ok(self.commutator.values[0].clone());
        }
        let algebra = self.algebra.get_or_insert_with(|| ClassAlgebra::compute(&self.group, &self.classes));
        Ok(commutator_power(algebra, &self.commutator, g).values[0].clone())
    }

    pub fn groupoid_count(&mut self, g: u32) -> Result<BigRational> {
        let order = BigInt::from(self.group.order());
        Ok(BigRational::new(self.hom_count(g)?, order))
    }

    /// Exact integer groupoid count; an error if the division leaves a remainder.
    pub fn groupoid_count_integer(&mut self, g: u32) -> Result<BigInt> {
        let v = self.groupoid_count(g)?;
        if v.denom().is_one() {
            Ok(v.to_integer())
        } else {
            Err(Error::Assertion(format!("groupoid count {v} is not an integer")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3() {
        let g = GroupTable::build(GroupKind::GL, 2, 2).unwrap();
        let c = ClassData::compute(&g);
        let mut sizes = c.sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        let n = commutator_class_function(&g, &c);
        assert_eq!(n.values[0], BigInt::from(3 * 6));
        assert_eq!(n.total(&c), BigInt::from(36));
        assert_eq!(hom_count(&g, &c, &n, 2).unwrap(), BigInt::from(486));
        assert_eq!(groupoid_count(&g, &c, &n, 2).unwrap(), BigRational::from_integer(81.into()));
    }

    #[test]
    fn class_counts() {
        let count = |kind, n, q| ClassData::compute(&GroupTable::build(kind, n, q).unwrap()).len();
        assert_eq!(count(GroupKind::GL, 2, 3), 8);
        assert_eq!(count(GroupKind::PGL, 2, 3), 5);
        assert_eq!(count(GroupKind::GL, 3, 2), 6);
        assert_eq!(count(GroupKind::SL, 2, 3), 7);
    }

    #[test]
    fn generator_orbits_match_full_orbits() {
        let g = GroupTable::build(GroupKind::PGL, 2, 7).unwrap();
        let full = ClassData::compute(&g);
        let gens = g.generators();
        // recompute orbits by closure under generators only
        let mut class_of = vec![u32::MAX; g.len()];
        let mut next = 0;
        for x in 0..g.len() as u32 {
            if class_of[x as usize] != u32::MAX {
                continue;
            }
            class_of[x as usize] = next;
            let mut stack = vec![x];
            while let Some(y) = stack.pop() {
                for &a in &gens {
                    let z = g.conjugate(a, y);
                    if class_of[z as usize] == u32::MAX {
                        class_of[z as usize] = next;
                        stack.push(z);
                    }
                }
            }
            next += 1;
        }
        assert_eq!(class_of, full.class_of);
    }

    #[test]
    fn pgl2_f3() {
        let mut o = Oracle::new(GroupKind::PGL, 2, 3, 1000).unwrap();
        let n = &o.commutator;
        let sum_sq: BigInt = n.values.iter().zip(&o.classes.sizes).map(|(v, &s)| v * v * BigInt::from(s)).sum();
        assert_eq!(sum_sq / 24, BigInt::from(1424));
        assert_eq!(o.hom_count(2).unwrap(), BigInt::from(24 * 1424));
        assert_eq!(o.groupoid_count_integer(1).unwrap(), BigInt::from(5));
    }

    #[test]
    fn cache_round_trip() {
        let g = GroupTable::build(GroupKind::GL, 2, 3).unwrap();
        let c = ClassData::compute(&g);
        let text = c.to_cache_text(&g);
        assert_eq!(ClassData::from_cache_text(&g, &text).unwrap(), c);
        let other = GroupTable::build(GroupKind::GL, 2, 2).unwrap();
        assert!(ClassData::from_cache_text(&other, &text).is_err());
        let truncated: String = text.lines().take(6).map(|l| format!("{l}\n")).collect();
        assert!(ClassData::from_cache_text(&g, &truncated).is_err());
    }
}

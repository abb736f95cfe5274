use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::field::FqField;
use crate::error::{Error, Result};

pub const DEFAULT_CAP: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    GL,
    SL,
    PGL,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::GL => "gl",
            GroupKind::SL => "sl",
            GroupKind::PGL => "pgl",
        })
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(GroupKind::GL),
            "sl" => Ok(GroupKind::SL),
            "pgl" => Ok(GroupKind::PGL),
            _ => Err(Error::InvalidArgument(format!("unknown group kind {s:?} (expected gl, sl or pgl)"))),
        }
    }
}

/// `|GL_n(F_q)|`, `|SL_n(F_q)|` or `|PGL_n(F_q)|`.
pub fn group_order(kind: GroupKind, n: u32, q: u64) -> BigInt {
    let q = BigInt::from(q);
    let qn = q.pow(n);
    let gl: BigInt = (0..n).map(|i| &qn - q.pow(i)).product();
    match kind {
        GroupKind::GL => gl,
        GroupKind::SL | GroupKind::PGL => gl / (q - 1),
    }
}

/// Every element of a small matrix group, with O(1) lookup.
///
/// Matrices are stored row-major as field-element codes; an element's key is
/// its base-`q` encoding. Projective classes are represented by the scalar
/// multiple whose first nonzero entry in column-major order is 1.
pub struct GroupTable {
    kind: GroupKind,
    n: usize,
    field: FqField,
    /// `elements[i*n*n .. (i+1)*n*n]` is element `i`.
    entries: Vec<u16>,
    keys: Vec<u64>,
    index: HashMap<u64, u32>,
    inverses: Vec<u32>,
}

impl GroupTable {
    pub fn build(kind: GroupKind, n: u32, q: u64) -> Result<Self> {
        Self::build_with_cap(kind, n, q, DEFAULT_CAP)
    }

    pub fn build_with_cap(kind: GroupKind, n: u32, q: u64, cap: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("matrix size must be positive".into()));
        }
        let field = FqField::new(q)?;
        let order = group_order(kind, n, q);
        if order > BigInt::from(cap) {
            return Err(Error::CapExceeded { order: order.to_string(), cap });
        }
        let nn = (n * n) as usize;
        let space = (q as f64).powi(nn as i32);
        if space > 1e10 {
            return Err(Error::InvalidArgument(format!("q^(n^2) = {space:e} matrices is too many to scan")));
        }
        let space = (q as u64).pow(nn as u32);
        let mut g = GroupTable {
            kind,
            n: n as usize,
            field,
            entries: Vec::with_capacity(order.to_usize().unwrap_or(0) * nn),
            keys: Vec::new(),
            index: HashMap::new(),
            inverses: Vec::new(),
        };
        let mut m = vec![0u16; nn];
        let id = g.identity_matrix();
        g.push(&id);
        for code in 0..space {
            g.decode_into(code, &mut m);
            if m == id {
                continue;
            }
            let keep = match kind {
                GroupKind::GL => g.det(&m) != 0,
                GroupKind::SL => g.det(&m) == 1,
                GroupKind::PGL => g.column_major_leading_is_one(&m) && g.det(&m) != 0,
            };
            if keep {
                g.push(&m);
            }
        }
        if BigInt::from(g.len()) != order {
            return Err(Error::Assertion(format!("enumerated {} elements, expected {order}", g.len())));
        }
        g.inverses = (0..g.len() as u32).map(|i| g.lookup(&g.invert(g.matrix(i)))).collect();
        Ok(g)
    }

    fn push(&mut self, m: &[u16]) {
        let key = self.encode(m);
        self.index.insert(key, self.keys.len() as u32);
        self.keys.push(key);
        self.entries.extend_from_slice(m);
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.keys.len() as u64
    }

    pub fn matrix(&self, i: u32) -> &[u16] {
        let nn = self.n * self.n;
        &self.entries[i as usize * nn..(i as usize + 1) * nn]
    }

    pub fn key(&self, i: u32) -> u64 {
        self.keys[i as usize]
    }

    pub fn index_of_key(&self, key: u64) -> Option<u32> {
        self.index.get(&key).copied()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn inverse(&self, i: u32) -> u32 {
        self.inverses[i as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let prod = self.mat_mul(self.matrix(a), self.matrix(b));
        self.lookup(&prod)
    }

    /// `a b a^{-1}`.
    pub fn conjugate(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(a, b), self.inverse(a))
    }

    /// Index of a matrix of the group (normalized first for PGL).
    pub fn lookup(&self, m: &[u16]) -> u32 {
        let key = match self.kind {
            GroupKind::PGL => self.encode(&self.normalize(m)),
            _ => self.encode(m),
        };
        self.index[&key]
    }

    /// Transvections `I + c E_ij`, plus `diag(ω, 1, …, 1)` for GL and PGL.
    pub fn generators(&self) -> Vec<u32> {
        let n = self.n;
        let mut gens = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for c in 1..self.field.q() as u16 {
                    let mut m = self.identity_matrix();
                    m[i * n + j] = c;
                    gens.push(self.lookup(&m));
                }
            }
        }
        if self.kind != GroupKind::SL {
            let mut m = self.identity_matrix();
            m[0] = self.field.primitive_element();
            gens.push(self.lookup(&m));
        }
        if n == 1 && self.kind == GroupKind::SL {
            gens.push(0);
        }
        gens.sort_unstable();
        gens.dedup();
        gens
    }

    fn identity_matrix(&self) -> Vec<u16> {
        let n = self.n;
        (0..n * n).map(|k| u16::from(k / n == k % n)).collect()
    }

    fn encode(&self, m: &[u16]) -> u64 {
        let q = self.field.q() as u64;
        m.iter().rev().fold(0, |acc, &x| acc * q + x as u64)
    }

    fn decode_into(&self, mut code: u64, out: &mut [u16]) {
        let q = self.field.q() as u64;
        for x in out.iter_mut() {
            *x = (code % q) as u16;
            code /= q;
        }
    }

    fn column_major_leading_is_one(&self, m: &[u16]) -> bool {
        let n = self.n;
        (0..n).flat_map(|j| (0..n).map(move |i| i * n + j)).map(|k| m[k]).find(|&x| x != 0) == Some(1)
    }

    fn normalize(&self, m: &[u16]) -> Vec<u16> {
        let n = self.n;
        let lead = (0..n)
            .flat_map(|j| (0..n).map(move |i| i * n + j))
            .map(|k| m[k])
            .find(|&x| x != 0)
            .expect("invertible matrix is nonzero");
        let s = self.field.inv(lead);
        m.iter().map(|&x| self.field.mul(x, s)).collect()
    }

    fn mat_mul(&self, a: &[u16], b: &[u16]) -> Vec<u16> {
        let n = self.n;
        let f = &self.field;
        let mut out = vec![0u16; n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = a[i * n + k];
                if aik == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = f.add(out[i * n + j], f.mul(aik, b[k * n + j]));
                }
            }
        }
        out
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self, m: &[u16]) -> u16 {
        let n = self.n;
        let f = &self.field;
        let mut a = m.to_vec();
        let mut det = 1u16;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| a[r * n + c] != 0) else {
                return 0;
            };
            if piv != c {
                for j in 0..n {
                    a.swap(piv * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let p = a[c * n + c];
            det = f.mul(det, p);
            let pinv = f.inv(p);
            for r in c + 1..n {
                let factor = f.mul(a[r * n + c], pinv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[c * n + j]));
                }
            }
        }
        det
    }

    fn invert(&self, m: &[u16]) -> Vec<u16> {
        let n = self.n;
        let f = &self.field;
        let mut a = m.to_vec();
        let mut inv = self.identity_matrix();
        for c in 0..n {
            let piv = (c..n).find(|&r| a[r * n + c] != 0).expect("invertible");
            for j in 0..n {
                a.swap(piv * n + j, c * n + j);
                inv.swap(piv * n + j, c * n + j);
            }
            let pinv = f.inv(a[c * n + c]);
            for j in 0..n {
                a[c * n + j] = f.mul(a[c * n + j], pinv);
                inv[c * n + j] = f.mul(inv[c * n + j], pinv);
            }
            for r in 0..n {
                if r == c || a[r * n + c] == 0 {
                    continue;
                }
                let factor = a[r * n + c];
                for j in 0..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[c * n + j]));
                    inv[r * n + j] = f.sub(inv[r * n + j], f.mul(factor, inv[c * n + j]));
                }
            }
        }
        inv
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(GroupTable::build(GroupKind::GL, 2, 2).unwrap().order(), 6);
        assert_eq!(GroupTable::build(GroupKind::PGL, 2, 3).unwrap().order(), 24);
        assert_eq!(GroupTable::build(GroupKind::SL, 2, 3).unwrap().order(), 24);
        assert_eq!(GroupTable::build(GroupKind::GL, 2, 4).unwrap().order(), 180);
        assert_eq!(group_order(GroupKind::PGL, 3, 4), BigInt::from(60480));
        assert_eq!(GroupTable::build(GroupKind::GL, 1, 5).unwrap().order(), 4);
    }

    #[test]
    fn errors() {
        assert!(matches!(GroupTable::build(GroupKind::GL, 2, 6), Err(Error::NotPrimePower(6))));
        assert!(matches!(GroupTable::build(GroupKind::GL, 3, 4), Err(Error::CapExceeded { .. })));
        assert!(matches!(GroupTable::build_with_cap(GroupKind::GL, 2, 3, 10), Err(Error::CapExceeded { .. })));
        assert!("so".parse::<GroupKind>().is_err());
    }

    #[test]
    fn group_axioms() {
        for (kind, n, q) in [(GroupKind::GL, 2, 3), (GroupKind::PGL, 2, 4), (GroupKind::SL, 2, 5), (GroupKind::GL, 3, 2)] {
            let g = GroupTable::build(kind, n, q).unwrap();
            let e = g.identity();
            for a in 0..g.len() as u32 {
                assert_eq!(g.mul(a, e), a);
                assert_eq!(g.mul(a, g.inverse(a)), e);
            }
            for a in (0..g.len() as u32).step_by(7) {
                for b in (0..g.len() as u32).step_by(5) {
                    let c = (a + b) % g.len() as u32;
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn generators_generate() {
        for (kind, n, q) in [(GroupKind::GL, 2, 4), (GroupKind::PGL, 2, 5), (GroupKind::SL, 2, 4), (GroupKind::SL, 3, 2), (GroupKind::GL, 1, 7), (GroupKind::SL, 1, 3)] {
            let g = GroupTable::build(kind, n, q).unwrap();
            let gens = g.generators();
            let mut seen = vec![false; g.len()];
            seen[0] = true;
            let mut stack = vec![0u32];
            while let Some(x) = stack.pop() {
                for &s in &gens {
                    let y = g.mul(x, s);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        stack.push(y);
                    }
                }
            }
            assert!(seen.iter().all(|&b| b), "{kind} {n} {q}");
        }
    }
}

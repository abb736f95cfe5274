use crate::arith::prime_power;
use crate::error::{Error, Result};

/// Largest field size the oracle will tabulate.
pub const MAX_FIELD_SIZE: u64 = 1024;

/// `F_q` with `q = p^k`, elements encoded as `0..q` through their base-`p`
/// coefficient vectors modulo a monic irreducible polynomial.
#[derive(Clone, Debug)]
pub struct FqField {
    p: u32,
    k: u32,
    q: u32,
    /// Coefficients `c_0..c_k` (monic, so `c_k = 1`); `[0, 1]` when `k = 1`.
    reduction: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    primitive: u16,
}

fn shipped_reduction(p: u32, k: u32) -> Option<Vec<u32>> {
    match (p, k) {
        (2, 2) => Some(vec![1, 1, 1]),
        (2, 3) => Some(vec![1, 1, 0, 1]),
        (3, 2) => Some(vec![1, 0, 1]),
        _ => None,
    }
}

/// Remainder of `a` modulo monic `m`, coefficients mod `p`, lowest degree first.
fn poly_rem(mut a: Vec<u32>, m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().unwrap();
        if lead != 0 {
            let off = a.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                a[off + i] = (a[off + i] + p - (lead * c) % p) % p;
            }
        }
    }
    a
}

fn monic_of_degree(p: u32, d: u32, index: u64) -> Vec<u32> {
    let mut c = Vec::with_capacity(d as usize + 1);
    let mut rest = index;
    for _ in 0..d {
        c.push((rest % p as u64) as u32);
        rest /= p as u64;
    }
    c.push(1);
    c
}

/// Exhaustive check: no monic factor of degree `1..=deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() as u32 - 1;
    if deg == 0 || *poly.last().unwrap() != 1 {
        return false;
    }
    for d in 1..=deg / 2 {
        for idx in 0..(p as u64).pow(d) {
            let f = monic_of_degree(p, d, idx);
            if poly_rem(poly.to_vec(), &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FqField {
    pub fn new(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_FIELD_SIZE {
            return Err(Error::InvalidArgument(format!("field size {q} exceeds {MAX_FIELD_SIZE}")));
        }
        let (p, q) = (p as u32, q as u32);
        let reduction = if k == 1 {
            vec![0, 1]
        } else {
            match shipped_reduction(p, k) {
                Some(r) => r,
                None => (0..(p as u64).pow(k))
                    .map(|i| monic_of_degree(p, k, i))
                    .find(|f| is_irreducible(f, p))
                    .expect("irreducible polynomials exist in every degree"),
            }
        };
        if k > 1 && !is_irreducible(&reduction, p) {
            return Err(Error::Assertion(format!("reduction polynomial {reduction:?} is reducible mod {p}")));
        }
        let digits = |x: u32| -> Vec<u32> { (0..k).map(|i| x / p.pow(i) % p).collect() };
        let encode = |v: &[u32]| -> u32 { v.iter().enumerate().map(|(i, &c)| c * p.pow(i as u32)).sum() };
        let qs = q as usize;
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&sum) as u16;
                let mut prod = vec![0u32; 2 * k as usize - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut red = if k == 1 { prod } else { poly_rem(prod, &reduction, p) };
                red.resize(k as usize, 0);
                mul[(a * q + b) as usize] = encode(&red) as u16;
            }
        }
        let neg = (0..q).map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap() as u16).collect();
        let inv = (0..q)
            .map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[(a * q + b) as usize] == 1).unwrap() as u16 })
            .collect();
        let mut field = FqField { p, k, q, reduction, add, mul, neg, inv, primitive: 1 };
        field.primitive = (1..q as u16)
            .find(|&a| field.multiplicative_order(a) == q - 1)
            .expect("multiplicative group is cyclic");
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn reduction_polynomial(&self) -> &[u32] {
        &self.reduction
    }

    /// A generator of `F_q^×`.
    pub fn primitive_element(&self) -> u16 {
        self.primitive
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    /// Inverse of a nonzero element.
    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    pub fn multiplicative_order(&self, a: u16) -> u32 {
        assert!(a != 0);
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }
}

//! Integer partitions, Young-diagram hooks and normalized hook polynomials.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::error::ParseError;
use crate::exactpoly::{HalfLaurent, Rational};

/// A partition stored as weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Panics if `parts` is not weakly decreasing or contains a zero.
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p > 0),
            "partition parts must be positive and weakly decreasing: {parts:?}"
        );
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of boxes.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Hook length of every box, row by row.
    pub fn hook_lengths(&self) -> Vec<u32> {
        let conj = self.conjugate();
        let mut hooks = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row as usize {
                let arm = row - j as u32 - 1;
                let leg = conj.parts[j] - i as u32 - 1;
                hooks.push(arm + leg + 1);
            }
        }
        hooks
    }

    /// `<λ, λ> = Σ (λ'_i)^2`.
    pub fn self_pairing(&self) -> u64 {
        self.conjugate().parts.iter().map(|&c| (c as u64) * (c as u64)).sum()
    }

    /// `q^{-<λ,λ>/2} ∏_{boxes} (1 - q^h)`.
    pub fn hook_polynomial(&self) -> HalfLaurent {
        let one = Rational::one();
        self.hook_lengths().into_iter().fold(
            HalfLaurent::monomial(one.clone(), -(self.self_pairing() as i64)),
            |acc, h| {
                let factor = HalfLaurent::monomial(one.clone(), 0) - HalfLaurent::monomial(one.clone(), 2 * h as i64);
                acc * factor
            },
        )
    }
}

/// Smaller size first; within one size, decreasing lexicographic order, so
/// `(2) < (1,1)`.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All partitions of `n` in decreasing lexicographic order.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    out
}

fn fill(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: current.clone() });
        return;
    }
    for part in (1..=remaining.min(max_part)).rev() {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `[3,1]`; `[]` is the empty partition.
impl FromStr for Partition {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| ParseError::new(0, &["["], t.chars().next().map(String::from)))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for piece in inner.split(',') {
            let v: u32 = piece
                .trim()
                .parse()
                .map_err(|_| ParseError::message(format!("bad partition part {piece:?} in {t:?}")))?;
            parts.push(v);
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(ParseError::message(format!("partition {t:?} must have positive, weakly decreasing parts")));
        }
        Ok(Partition { parts })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::int;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration() {
        assert_eq!(enumerate_partitions(2), vec![part("[2]"), part("[1,1]")]);
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(5).len(), 7);
        assert_eq!(
            enumerate_partitions(4),
            ["[4]", "[3,1]", "[2,2]", "[2,1,1]", "[1,1,1,1]"].map(part).to_vec()
        );
    }

    #[test]
    fn conjugation() {
        assert_eq!(part("[2]").conjugate(), part("[1,1]"));
        assert_eq!(part("[3,1]").conjugate(), part("[2,1,1]"));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn hooks() {
        let mut h = part("[2]").hook_lengths();
        h.sort();
        assert_eq!(h, vec![1, 2]);
        assert_eq!(part("[1]").hook_lengths(), vec![1]);
        let mut h = part("[2,1]").hook_lengths();
        h.sort();
        assert_eq!(h, vec![1, 1, 3]);
    }

    #[test]
    fn pairing() {
        assert_eq!(part("[1]").self_pairing(), 1);
        assert_eq!(part("[2]").self_pairing(), 2);
        assert_eq!(part("[1,1]").self_pairing(), 4);
    }

    #[test]
    fn hook_polynomials() {
        let one = |e| HalfLaurent::monomial(int(1), e);
        assert_eq!(part("[1]").hook_polynomial(), one(-1) - one(1));
        // q^{-1}(1-q)(1-q^2)
        let expected = one(-2) * (one(0) - one(2)) * (one(0) - one(4));
        assert_eq!(part("[2]").hook_polynomial(), expected);
        assert_eq!(Partition::empty().hook_polynomial(), HalfLaurent::one());
        // q^{-2}(1-q^2)(1-q)
        let expected = one(-4) * (one(0) - one(4)) * (one(0) - one(2));
        assert_eq!(part("[1,1]").hook_polynomial(), expected);
    }

    #[test]
    fn text_form() {
        assert_eq!(part("[3, 1]").to_string(), "[3,1]");
        assert_eq!(Partition::empty().to_string(), "[]");
        assert!("[1,2]".parse::<Partition>().is_err());
        assert!("3,1".parse::<Partition>().is_err());
        assert!("[0]".parse::<Partition>().is_err());
    }

    #[test]
    fn canonical_order() {
        assert!(part("[2]") < part("[1,1]"));
        assert!(part("[1,1]") < part("[3]"));
    }
}

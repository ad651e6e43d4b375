//! Graded polynomial rings and their monomials.

use std::cmp::Ordering;
use std::fmt;

use super::{Field, PolyError};

pub const MAX_VARS: usize = 16;

/// An exponent vector together with its cached weighted degree.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mono {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl Mono {
    pub(crate) fn from_exps(exps: [u16; MAX_VARS], weights: &[u32]) -> Mono {
        let deg = weights
            .iter()
            .zip(exps.iter())
            .map(|(w, e)| w * *e as u32)
            .sum();
        Mono { exps, deg }
    }

    pub fn one() -> Self {
        Mono {
            exps: [0; MAX_VARS],
            deg: 0,
        }
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    /// Weighted degree.
    #[inline]
    pub fn deg(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0 && self.exps.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn mul(&self, other: &Mono) -> Mono {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a += *b;
        }
        Mono {
            exps,
            deg: self.deg + other.deg,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Mono) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other`, assuming `other` divides `self`.
    #[inline]
    pub fn div(&self, other: &Mono) -> Mono {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            debug_assert!(*a >= *b);
            *a -= *b;
        }
        Mono {
            exps,
            deg: self.deg - other.deg,
        }
    }

    pub fn is_coprime(&self, other: &Mono) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Total exponent over the variables in `mask`, weighted.
    #[inline]
    fn masked_deg(&self, mask: u32, weights: &[u32]) -> u32 {
        let mut s = 0;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            s += self.exps[i] as u32 * weights[i];
            m &= m - 1;
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonoOrder {
    /// Weighted degree, then reverse lexicographic.
    DegRevLex,
    Lex,
}

/// A polynomial ring `F_p[x_1..x_n]` with positive integer degree weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: Field,
    names: Vec<String>,
    weights: Vec<u32>,
    order: MonoOrder,
}

impl PolyRing {
    pub fn new(
        field: Field,
        names: Vec<String>,
        weights: Vec<u32>,
        order: MonoOrder,
    ) -> Result<Self, PolyError> {
        if names.len() > MAX_VARS {
            return Err(PolyError::TooManyVariables(names.len()));
        }
        if names.len() != weights.len() || weights.contains(&0) {
            return Err(PolyError::BadWeights);
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        Ok(PolyRing {
            field,
            names,
            weights,
            order,
        })
    }

    /// Standard-graded ring with the given variable names.
    pub fn standard(p: u32, names: &[&str]) -> Result<Self, PolyError> {
        PolyRing::new(
            Field::new(p)?,
            names.iter().map(|s| s.to_string()).collect(),
            vec![1; names.len()],
            MonoOrder::DegRevLex,
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn order(&self) -> MonoOrder {
        self.order
    }

    pub fn with_order(&self, order: MonoOrder) -> PolyRing {
        PolyRing {
            order,
            ..self.clone()
        }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn mono(&self, exps: &[u16]) -> Mono {
        assert!(exps.len() <= self.nvars());
        let mut e = [0u16; MAX_VARS];
        let mut deg = 0;
        for (i, &x) in exps.iter().enumerate() {
            e[i] = x;
            deg += x as u32 * self.weights[i];
        }
        Mono { exps: e, deg }
    }

    pub fn var(&self, i: usize) -> Mono {
        let mut e = [0u16; MAX_VARS];
        e[i] = 1;
        Mono {
            exps: e,
            deg: self.weights[i],
        }
    }

    pub fn lcm(&self, a: &Mono, b: &Mono) -> Mono {
        let mut exps = [0u16; MAX_VARS];
        let mut deg = 0;
        for i in 0..self.nvars() {
            exps[i] = a.exps[i].max(b.exps[i]);
            deg += exps[i] as u32 * self.weights[i];
        }
        Mono { exps, deg }
    }

    pub fn gcd(&self, a: &Mono, b: &Mono) -> Mono {
        let mut exps = [0u16; MAX_VARS];
        let mut deg = 0;
        for i in 0..self.nvars() {
            exps[i] = a.exps[i].min(b.exps[i]);
            deg += exps[i] as u32 * self.weights[i];
        }
        Mono { exps, deg }
    }

    /// Compare only the weighted degree in the variables of `mask`.
    #[inline]
    pub fn cmp_block(&self, a: &Mono, b: &Mono, mask: u32) -> Ordering {
        a.masked_deg(mask, &self.weights)
            .cmp(&b.masked_deg(mask, &self.weights))
    }

    /// Compare monomials in the ring's order, with an optional block of
    /// eliminated variables compared first.
    #[inline]
    pub fn cmp_mono(&self, a: &Mono, b: &Mono, elim: u32) -> Ordering {
        if elim != 0 {
            let o = a
                .masked_deg(elim, &self.weights)
                .cmp(&b.masked_deg(elim, &self.weights));
            if o != Ordering::Equal {
                return o;
            }
        }
        match self.order {
            MonoOrder::DegRevLex => {
                let o = a.deg.cmp(&b.deg);
                if o != Ordering::Equal {
                    return o;
                }
                for i in (0..self.nvars()).rev() {
                    if a.exps[i] != b.exps[i] {
                        return b.exps[i].cmp(&a.exps[i]);
                    }
                }
                Ordering::Equal
            }
            MonoOrder::Lex => {
                for i in 0..self.nvars() {
                    if a.exps[i] != b.exps[i] {
                        return a.exps[i].cmp(&b.exps[i]);
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// All monomials of weighted degree `d`, in descending order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Mono> {
        let mut out = Vec::new();
        let mut exps = [0u16; MAX_VARS];
        self.enumerate(0, d, &mut exps, &mut out);
        out.sort_by(|a, b| self.cmp_mono(b, a, 0));
        out
    }

    fn enumerate(&self, i: usize, rest: u32, exps: &mut [u16; MAX_VARS], out: &mut Vec<Mono>) {
        if i == self.nvars() {
            if rest == 0 {
                out.push(self.mono(&exps[..self.nvars()]));
            }
            return;
        }
        let w = self.weights[i];
        let mut e = 0;
        while e * w <= rest {
            exps[i] = e as u16;
            self.enumerate(i + 1, rest - e * w, exps, out);
            e += 1;
        }
        exps[i] = 0;
    }

    pub fn fmt_mono(&self, m: &Mono) -> String {
        let mut parts = Vec::new();
        for i in 0..self.nvars() {
            match m.exps[i] {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                e => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[{}]", self.field.p(), self.names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_orders_by_degree_then_reverse() {
        let r = PolyRing::standard(101, &["x", "y", "z"]).unwrap();
        let xz = r.mono(&[1, 0, 1]);
        let y2 = r.mono(&[0, 2, 0]);
        let x2 = r.mono(&[2, 0, 0]);
        // x^2 > y^2 > xz in degrevlex with x > y > z
        assert_eq!(r.cmp_mono(&x2, &y2, 0), Ordering::Greater);
        assert_eq!(r.cmp_mono(&y2, &xz, 0), Ordering::Greater);
        assert_eq!(r.cmp_mono(&r.mono(&[0, 0, 3]), &x2, 0), Ordering::Greater);
    }

    #[test]
    fn monomial_enumeration_counts() {
        let r = PolyRing::standard(101, &["x", "z"]).unwrap();
        assert_eq!(r.monomials_of_degree(3).len(), 4);
        let w = PolyRing::new(
            Field::new(101).unwrap(),
            vec!["a".into(), "b".into()],
            vec![1, 2],
            MonoOrder::DegRevLex,
        )
        .unwrap();
        // a^4, a^2 b, b^2
        assert_eq!(w.monomials_of_degree(4).len(), 3);
    }
}

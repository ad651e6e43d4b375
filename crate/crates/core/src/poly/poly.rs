//! Sparse polynomials with terms kept in descending monomial order.

use std::cmp::Ordering;

use super::{Mono, PolyRing};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, u32)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(ring: &PolyRing, c: i64) -> Self {
        Poly::term(Mono::one(), ring.field().from_i64(c))
    }

    pub fn term(m: Mono, c: u32) -> Self {
        if c == 0 {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(ring: &PolyRing, i: usize) -> Self {
        Poly::term(ring.var(i), 1)
    }

    /// Build from arbitrary terms: sorts, merges equal monomials, drops zeros.
    pub fn from_terms(ring: &PolyRing, mut terms: Vec<(Mono, u32)>) -> Self {
        let f = ring.field();
        terms.sort_by(|a, b| ring.cmp_mono(&b.0, &a.0, 0));
        let mut out: Vec<(Mono, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, u32)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn lead(&self) -> Option<&(Mono, u32)> {
        self.terms.first()
    }

    pub fn constant_term(&self) -> u32 {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    /// Weighted degree of the leading term (the degree, if homogeneous).
    pub fn degree(&self) -> Option<u32> {
        self.lead().map(|t| t.0.deg())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.lead() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|t| t.0.deg() == m.deg()),
        }
    }

    pub fn add(&self, ring: &PolyRing, other: &Poly) -> Poly {
        merge(ring, &self.terms, &other.terms, 1)
    }

    pub fn sub(&self, ring: &PolyRing, other: &Poly) -> Poly {
        merge(ring, &self.terms, &other.terms, ring.field().neg(1))
    }

    pub fn neg(&self, ring: &PolyRing) -> Poly {
        self.scale(ring, ring.field().neg(1))
    }

    pub fn scale(&self, ring: &PolyRing, c: u32) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        let f = ring.field();
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, f.mul(*a, c))).collect(),
        }
    }

    pub fn mul_term(&self, ring: &PolyRing, m: &Mono, c: u32) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        let f = ring.field();
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), f.mul(*a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, ring: &PolyRing, other: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for (m, c) in &other.terms {
            acc = acc.add(ring, &self.mul_term(ring, m, *c));
        }
        acc
    }

    pub fn pow(&self, ring: &PolyRing, e: u32) -> Poly {
        let mut acc = Poly::constant(ring, 1);
        for _ in 0..e {
            acc = acc.mul(ring, self);
        }
        acc
    }

    pub fn make_monic(&self, ring: &PolyRing) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some((_, c)) => self.scale(ring, ring.field().inv(*c)),
        }
    }

    /// Replace variable `var` by `value` (a polynomial in the same ring).
    pub fn substitute(&self, ring: &PolyRing, var: usize, value: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            let mut exps = *m.exps();
            exps[var] = 0;
            let rest = ring.mono(&exps[..ring.nvars()]);
            let t = value.pow(ring, e as u32).mul_term(ring, &rest, *c);
            acc = acc.add(ring, &t);
        }
        acc
    }

    /// Rewrite into another ring by mapping variable `i` to `var_map[i]`
    /// (`None` means the variable must not occur).
    pub fn remap(&self, from: &PolyRing, to: &PolyRing, var_map: &[Option<usize>]) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = vec![0u16; to.nvars()];
                for i in 0..from.nvars() {
                    let e = m.exp(i);
                    if e > 0 {
                        let j = var_map[i].expect("variable not present in target ring");
                        exps[j] += e;
                    }
                }
                (to.mono(&exps), *c)
            })
            .collect();
        Poly::from_terms(to, terms)
    }

    pub fn fmt(&self, ring: &PolyRing) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let f = ring.field();
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let v = f.to_signed(*c);
            let (sign, mag) = if v < 0 { ("-", -v) } else { ("+", v) };
            if k == 0 {
                if sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {} ", sign));
            }
            let body = ring.fmt_mono(m);
            if m.is_one() {
                s.push_str(&mag.to_string());
            } else if mag == 1 {
                s.push_str(&body);
            } else {
                s.push_str(&format!("{}*{}", mag, body));
            }
        }
        s
    }
}

/// `a + c*b` for sorted term lists.
fn merge(ring: &PolyRing, a: &[(Mono, u32)], b: &[(Mono, u32)], c: u32) -> Poly {
    let f = ring.field();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match ring.cmp_mono(&a[i].0, &b[j].0, 0) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0, f.mul(b[j].1, c)));
                j += 1;
            }
            Ordering::Equal => {
                let v = f.add(a[i].1, f.mul(b[j].1, c));
                if v != 0 {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|(m, v)| (*m, f.mul(*v, c))));
    Poly { terms: out }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_printing() {
        let r = PolyRing::standard(101, &["x", "z"]).unwrap();
        let x = Poly::var(&r, 0);
        let z = Poly::var(&r, 1);
        let s = x.add(&r, &z);
        let sq = s.mul(&r, &s);
        assert_eq!(sq.fmt(&r), "x^2 + 2*x*z + z^2");
        let d = sq.sub(&r, &x.mul(&r, &x));
        assert_eq!(d.fmt(&r), "2*x*z + z^2");
        assert!(sq.sub(&r, &sq).is_zero());
        assert_eq!(x.neg(&r).fmt(&r), "-x");
    }

    #[test]
    fn substitution() {
        let r = PolyRing::standard(101, &["x", "z"]).unwrap();
        let x = Poly::var(&r, 0);
        let z = Poly::var(&r, 1);
        let f = x.mul(&r, &z).add(&r, &z.mul(&r, &z));
        // x -> z gives 2 z^2
        let g = f.substitute(&r, 0, &z);
        assert_eq!(g.fmt(&r), "2*z^2");
    }
}

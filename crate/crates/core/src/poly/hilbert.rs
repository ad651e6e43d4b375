//! Hilbert series of graded quotients `P^r / U`, computed from lead terms.

use serde::Serialize;

use super::Mono;

/// `numerator(t) / prod_i (1 - t^{w_i})`, with the numerator stored as
/// coefficients of `t^offset, t^(offset+1), ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    pub numerator: Vec<i64>,
    pub offset: i32,
    pub weights: Vec<u32>,
}

impl HilbertSeries {
    pub(crate) fn from_parts(mut numerator: Vec<i64>, mut offset: i32, weights: Vec<u32>) -> Self {
        while numerator.last() == Some(&0) {
            numerator.pop();
        }
        let lead_zeros = numerator.iter().take_while(|&&c| c == 0).count();
        if lead_zeros == numerator.len() {
            numerator.clear();
            offset = 0;
        } else {
            numerator.drain(..lead_zeros);
            offset += lead_zeros as i32;
        }
        HilbertSeries {
            numerator,
            offset,
            weights,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Number of ambient variables (the exponent of the denominator).
    pub fn denominator_exponent(&self) -> usize {
        self.weights.len()
    }

    /// Krull dimension; `None` for the zero module.
    pub fn dimension(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let (_, k) = divide_out_one_minus_t(&self.numerator);
        Some(self.weights.len() - k)
    }

    /// Numerator over `(1-t)^dim` (standard-graded rings only).
    pub fn reduced_numerator(&self) -> Vec<i64> {
        assert!(self.weights.iter().all(|&w| w == 1));
        divide_out_one_minus_t(&self.numerator).0
    }

    /// Coefficients of the series in degrees `offset ..= top`.
    pub fn expand(&self, top: i32) -> Vec<(i32, i64)> {
        if self.is_zero() || top < self.offset {
            return Vec::new();
        }
        let len = (top - self.offset + 1) as usize;
        let mut c = vec![0i64; len];
        for (i, v) in self.numerator.iter().enumerate().take(len) {
            c[i] = *v;
        }
        for &w in &self.weights {
            let w = w as usize;
            for i in w..len {
                c[i] += c[i - w];
            }
        }
        c.into_iter()
            .enumerate()
            .map(|(i, v)| (self.offset + i as i32, v))
            .collect()
    }

    /// Dimension of the degree-`n` component.
    pub fn value(&self, n: i32) -> i64 {
        self.expand(n)
            .last()
            .filter(|(d, _)| *d == n)
            .map(|(_, v)| *v)
            .unwrap_or(0)
    }

    /// Total dimension when the module has finite length.
    pub fn total_length(&self) -> Option<i64> {
        match self.dimension() {
            None => Some(0),
            Some(0) => {
                let mut q = self.numerator.clone();
                for &w in &self.weights {
                    q = divide_exact(&q, w as usize);
                }
                Some(q.iter().sum())
            }
            Some(_) => None,
        }
    }

    /// Highest degree with a nonzero component, for finite-length modules.
    pub fn top_degree(&self) -> Option<i32> {
        if self.dimension() != Some(0) {
            return None;
        }
        let mut q = self.numerator.clone();
        for &w in &self.weights {
            q = divide_exact(&q, w as usize);
        }
        q.iter()
            .rposition(|&c| c != 0)
            .map(|i| self.offset + i as i32)
    }

    pub fn add(&self, other: &HilbertSeries) -> HilbertSeries {
        assert_eq!(self.weights, other.weights);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.offset.min(other.offset);
        let hi = (self.offset + self.numerator.len() as i32)
            .max(other.offset + other.numerator.len() as i32);
        let mut v = vec![0i64; (hi - lo) as usize];
        for (i, c) in self.numerator.iter().enumerate() {
            v[(self.offset - lo) as usize + i] += c;
        }
        for (i, c) in other.numerator.iter().enumerate() {
            v[(other.offset - lo) as usize + i] += c;
        }
        HilbertSeries::from_parts(v, lo, self.weights.clone())
    }

    pub fn negate(&self) -> HilbertSeries {
        HilbertSeries {
            numerator: self.numerator.iter().map(|c| -c).collect(),
            offset: self.offset,
            weights: self.weights.clone(),
        }
    }
}

/// Divide by `(1-t)` as often as possible; returns quotient and count.
fn divide_out_one_minus_t(p: &[i64]) -> (Vec<i64>, usize) {
    let mut q = p.to_vec();
    let mut k = 0;
    while !q.is_empty() && q.iter().sum::<i64>() == 0 {
        q = divide_exact(&q, 1);
        k += 1;
    }
    (q, k)
}

/// Exact division by `1 - t^w`.
fn divide_exact(p: &[i64], w: usize) -> Vec<i64> {
    // p = (1 - t^w) q  =>  q_i = p_i + q_{i-w}
    let n = p.len();
    if n <= w {
        assert!(p.iter().all(|&c| c == 0), "inexact division");
        return Vec::new();
    }
    let mut q = vec![0i64; n - w];
    for i in 0..n - w {
        q[i] = p[i] + if i >= w { q[i - w] } else { 0 };
    }
    for i in n - w..n {
        debug_assert_eq!(p[i], -(if i >= w { q[i - w] } else { 0 }));
    }
    q
}

/// Numerator of `P / L` for a monomial ideal `L` (Bigatti-style pivoting).
pub(crate) fn monomial_numerator(gens: &[Mono], weights: &[u32]) -> Vec<i64> {
    let n = weights.len();
    let mut g: Vec<Mono> = gens.to_vec();
    minimize(&mut g);
    numer(g, weights, n)
}

fn minimize(g: &mut Vec<Mono>) {
    g.sort_by_key(|m| m.deg());
    g.dedup();
    let mut out: Vec<Mono> = Vec::with_capacity(g.len());
    for m in g.iter() {
        if !out.iter().any(|o| o.divides(m)) {
            out.push(*m);
        }
    }
    *g = out;
}

fn poly_add(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, c) in b.iter().enumerate() {
        a[i + shift] += c;
    }
}

fn numer(g: Vec<Mono>, weights: &[u32], n: usize) -> Vec<i64> {
    if g.is_empty() {
        return vec![1];
    }
    let pairwise_coprime = g
        .iter()
        .enumerate()
        .all(|(i, a)| g[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        let mut acc = vec![1i64];
        for m in &g {
            let d = m.deg() as usize;
            let mut next = acc.clone();
            poly_add(&mut next, &acc.iter().map(|c| -c).collect::<Vec<_>>(), d);
            acc = next;
        }
        return acc;
    }
    // Pivot on the variable appearing in most generators.
    let mut best = (0usize, 0usize);
    for v in 0..n {
        let cnt = g.iter().filter(|m| m.exp(v) > 0).count();
        if cnt > best.1 {
            best = (v, cnt);
        }
    }
    let v = best.0;
    let e = g
        .iter()
        .filter(|m| m.exp(v) > 0)
        .map(|m| m.exp(v))
        .min()
        .unwrap();
    let mut pexps = [0u16; super::MAX_VARS];
    pexps[v] = e;
    let pivot = mono_from(&pexps, weights);

    let mut plus: Vec<Mono> = g.iter().filter(|m| !pivot.divides(m)).copied().collect();
    plus.push(pivot);
    minimize(&mut plus);

    let mut colon: Vec<Mono> = g
        .iter()
        .map(|m| {
            let mut ex = *m.exps();
            ex[v] = ex[v].saturating_sub(e);
            mono_from(&ex, weights)
        })
        .collect();
    minimize(&mut colon);

    let mut a = numer(plus, weights, n);
    let b = numer(colon, weights, n);
    poly_add(&mut a, &b, pivot.deg() as usize);
    a
}

fn mono_from(exps: &[u16; super::MAX_VARS], weights: &[u32]) -> Mono {
    Mono::from_exps(*exps, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    #[test]
    fn quotient_by_square() {
        let r = PolyRing::standard(101, &["x", "z"]).unwrap();
        let num = monomial_numerator(&[r.mono(&[0, 2])], r.weights());
        let hs = HilbertSeries::from_parts(num, 0, r.weights().to_vec());
        assert_eq!(hs.numerator, vec![1, 0, -1]);
        assert_eq!(hs.dimension(), Some(1));
        assert_eq!(hs.reduced_numerator(), vec![1, 1]);
        let vals: Vec<i64> = hs.expand(5).into_iter().map(|x| x.1).collect();
        assert_eq!(vals, vec![1, 2, 2, 2, 2, 2]);
    }

    #[test]
    fn polynomial_ring_and_field() {
        let r = PolyRing::standard(101, &["x", "z"]).unwrap();
        let hs = HilbertSeries::from_parts(monomial_numerator(&[], r.weights()), 0, vec![1, 1]);
        assert_eq!(hs.numerator, vec![1]);
        assert_eq!(hs.dimension(), Some(2));
        let k = HilbertSeries::from_parts(
            monomial_numerator(&[r.mono(&[1, 0]), r.mono(&[0, 1])], r.weights()),
            0,
            vec![1, 1],
        );
        assert_eq!(k.numerator, vec![1, -2, 1]);
        assert_eq!(k.dimension(), Some(0));
        assert_eq!(k.total_length(), Some(1));
    }
}

//! Truncated minimal free resolutions over `A`, syzygy modules and depth.

use std::sync::Arc;

use super::{Module, ResolveError};
use crate::ci_ring::CIRing;
use crate::poly::{preimage, Poly, Vector};

/// `F_N -> ... -> F_1 -> F_0`, with `maps[i - 1]` the columns of `∂_i`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub module: Module,
    pub degrees: Vec<Vec<i32>>,
    pub maps: Vec<Vec<Vector>>,
    pub minimal: bool,
}

/// Generators of `ker(A^m -> A^r)` for the given columns, reduced mod `f`.
pub(crate) fn kernel_over(ring: &CIRing, target: &[i32], cols: &[Vector], src: &[i32]) -> Vec<Vector> {
    if cols.is_empty() {
        return Vec::new();
    }
    let sub = ring.relation_vectors(target.len());
    preimage(ring.ring(), target, cols, src, &sub)
        .iter()
        .map(|v| ring.reduce_vector(v))
        .filter(|v| !v.is_zero())
        .collect()
}

pub fn minimal_resolution(m: &Module, cutoff: usize) -> FreeResolution {
    let ring = m.ring().clone();
    let m = m.minimize();
    let mut degrees = vec![m.degrees().to_vec()];
    let mut maps: Vec<Vec<Vector>> = Vec::new();
    let first = m.relations().to_vec();
    for i in 1..=cutoff {
        let cols = if i == 1 {
            first.clone()
        } else {
            let prev = &maps[i - 2];
            let ker = kernel_over(&ring, &degrees[i - 2], prev, &degrees[i - 1]);
            ring.minimal_subset(&degrees[i - 1], &ker)
        };
        let degs: Vec<i32> = cols
            .iter()
            .map(|c| c.degree(&degrees[i - 1]).unwrap())
            .collect();
        degrees.push(degs);
        maps.push(cols);
    }
    FreeResolution {
        module: m,
        degrees,
        maps,
        minimal: true,
    }
}

impl FreeResolution {
    pub fn ring(&self) -> &Arc<CIRing> {
        self.module.ring()
    }

    pub fn cutoff(&self) -> usize {
        self.maps.len()
    }

    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.len()).collect()
    }

    /// `∂_i` for `1 <= i <= cutoff`.
    pub fn differential(&self, i: usize) -> &[Vector] {
        &self.maps[i - 1]
    }

    /// Entry `(k, l)` of `∂_i`: the coefficient of `e_k` in `∂_i(e_l)`.
    pub fn entries(&self, i: usize) -> Vec<Vec<Poly>> {
        let r = self.ring().ring();
        let rows = self.degrees[i - 1].len();
        self.maps[i - 1].iter().map(|c| c.components(r, rows)).collect()
    }

    /// Graded Betti numbers as `(i, degree, count)`.
    pub fn graded_betti(&self) -> Vec<(usize, i32, usize)> {
        let mut out = Vec::new();
        for (i, degs) in self.degrees.iter().enumerate() {
            let mut d = degs.clone();
            d.sort();
            let mut j = 0;
            while j < d.len() {
                let k = d[j..].iter().take_while(|&&x| x == d[j]).count();
                out.push((i, d[j], k));
                j += k;
            }
        }
        out
    }

    /// Whether `∂_i ∂_{i+1} = 0` modulo `f` everywhere.
    pub fn is_complex(&self) -> bool {
        let ring = self.ring();
        let r = ring.ring();
        for i in 1..self.cutoff() {
            let rows = self.degrees[i].len();
            for col in &self.maps[i] {
                let mut acc = Vector::zero();
                for (k, c) in col.components(r, rows).iter().enumerate() {
                    if !c.is_zero() {
                        acc = acc.add(r, crate::poly::ModOrder::POT, &self.maps[i - 1][k].mul_poly(r, crate::poly::ModOrder::POT, c));
                    }
                }
                if !ring.reduce_vector(&acc).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Whether each `ker ∂_i` equals `im ∂_{i+1}` (checked by recomputing
    /// kernels) for `1 <= i < cutoff`.
    pub fn is_exact(&self) -> bool {
        let ring = self.ring();
        for i in 1..self.cutoff() {
            let ker = kernel_over(ring, &self.degrees[i - 1], &self.maps[i - 1], &self.degrees[i]);
            let mut img = self.maps[i].clone();
            img.extend(ring.relation_vectors(self.degrees[i].len()));
            let im = crate::poly::FreeSubmodule::new(ring.ring().clone(), self.degrees[i].clone(), img).unwrap();
            if !ker.iter().all(|v| im.contains(v)) {
                return false;
            }
        }
        true
    }

    /// No differential entry is a nonzero constant.
    pub fn has_no_units(&self) -> bool {
        (1..=self.cutoff()).all(|i| {
            self.entries(i)
                .iter()
                .flatten()
                .all(|p| p.is_zero() || p.degree() != Some(0))
        })
    }

    /// A non-minimal resolution of the same module: a trivial complex
    /// `A -> A` is added in homological degrees `i, i-1`, with the new
    /// column also carrying a copy of an existing column.
    pub fn with_trivial_summand(&self, i: usize) -> FreeResolution {
        assert!(i >= 1 && i <= self.cutoff());
        let ring = self.ring().clone();
        let r = ring.ring().clone();
        let mut out = self.clone();
        let deg = self.degrees[i].first().copied().unwrap_or(self.degrees[i - 1].first().copied().unwrap_or(0));
        // new generator e of F_{i-1} in degree `deg`, new e' of F_i with ∂e' = e + ∂(first column)
        let low = out.degrees[i - 1].len();
        out.degrees[i - 1].push(deg);
        let mut col = Vector::unit(low);
        if let Some(c0) = self.maps[i - 1].first() {
            if self.degrees[i][0] == deg {
                col = col.add(&r, crate::poly::ModOrder::POT, c0);
            }
        }
        out.degrees[i].push(deg);
        out.maps[i - 1].push(col);
        if i < self.cutoff() {
            // ∂_{i+1} is unchanged; its columns live in the old part of F_i.
        }
        if i >= 2 {
            // ∂_{i-1}(e) = 0: nothing to add, columns are indexed by F_{i-1}.
            out.maps[i - 2].push(Vector::zero());
        }
        if i == 1 {
            out.module = Module::new(ring, out.degrees[0].clone(), out.maps[0].clone()).unwrap();
        }
        out.minimal = false;
        out
    }
}

/// `Ω^i(M)`, presented as `coker(∂_{i+1})` on `F_i`.
pub fn syzygy(m: &Module, i: usize) -> Module {
    if i == 0 {
        return m.minimize();
    }
    let res = minimal_resolution(m, i + 1);
    Module::new(m.ring().clone(), res.degrees[i].clone(), res.maps[i].clone()).unwrap()
}

/// Projective dimension over the ambient polynomial ring.
pub fn projective_dimension(m: &Module) -> Option<usize> {
    let ring = CIRing::polynomial(m.ring().ring().clone());
    let mut rels = m.relations().to_vec();
    rels.extend(m.ring().relation_vectors(m.rank()));
    let over_p = Module::new(ring, m.degrees().to_vec(), rels).unwrap();
    let n = m.ring().ring().nvars();
    let res = minimal_resolution(&over_p, n + 1);
    if res.betti()[0] == 0 {
        return None;
    }
    res.betti().iter().rposition(|&b| b > 0)
}

/// Depth by the Auslander–Buchsbaum formula over `P`; the zero module is
/// reported with depth `dim A`.
pub fn depth(m: &Module) -> usize {
    match projective_dimension(m) {
        None => m.ring().dim(),
        Some(pd) => m.ring().ring().nvars() - pd,
    }
}

pub fn is_mcm(m: &Module) -> bool {
    depth(m) >= m.ring().dim()
}

pub fn require_mcm(m: &Module) -> Result<(), ResolveError> {
    let d = depth(m);
    if d < m.ring().dim() {
        return Err(ResolveError::NotMcm {
            depth: d,
            dim: m.ring().dim(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ci_ring::CIRing;
    use crate::poly::{parse_poly, PolyRing};

    fn ring(names: &[&str], f: &[&str]) -> Arc<CIRing> {
        let r = Arc::new(PolyRing::standard(101, names).unwrap());
        let f = f.iter().map(|s| parse_poly(&r, s).unwrap()).collect();
        CIRing::new(r, f).unwrap()
    }

    #[test]
    fn periodic_resolution_of_m1() {
        let a = ring(&["x", "z"], &["z^2"]);
        let z = parse_poly(a.ring(), "z").unwrap();
        let m1 = Module::cyclic(a.clone(), &[z]).unwrap();
        let res = minimal_resolution(&m1, 4);
        assert_eq!(res.betti(), vec![1, 1, 1, 1, 1]);
        for i in 1..=4 {
            assert_eq!(res.entries(i)[0][0].fmt(a.ring()), "z");
        }
        assert!(res.is_complex() && res.is_exact() && res.has_no_units());
    }

    #[test]
    fn free_and_residue_field() {
        let a = ring(&["x", "z"], &["z^2"]);
        let res = minimal_resolution(&Module::free(a.clone(), vec![0]), 4);
        assert_eq!(res.betti(), vec![1, 0, 0, 0, 0]);
        let res = minimal_resolution(&Module::residue_field(a), 4);
        assert_eq!(res.betti(), vec![1, 2, 2, 2, 2]);
        let a2 = ring(&["x", "z1", "z2"], &["z1^2", "z2^2"]);
        let res = minimal_resolution(&Module::residue_field(a2), 3);
        assert_eq!(res.betti(), vec![1, 3, 5, 7]);
        assert!(res.is_complex() && res.is_exact() && res.has_no_units());
    }

    #[test]
    fn depths() {
        let a = ring(&["x", "z"], &["z^2"]);
        let z = parse_poly(a.ring(), "z").unwrap();
        assert_eq!(depth(&Module::cyclic(a.clone(), &[z]).unwrap()), 1);
        assert_eq!(depth(&Module::residue_field(a.clone())), 0);
        let a2 = ring(&["x", "z1", "z2"], &["z1^2", "z2^2"]);
        assert_eq!(depth(&Module::free(a2, vec![0])), 1);
    }

    #[test]
    fn syzygy_of_residue_field_is_maximal_ideal() {
        let a = ring(&["x", "z"], &["z^2"]);
        let k = Module::residue_field(a.clone());
        let om = syzygy(&k, 1);
        let m = Module::ideal(&crate::ci_ring::Ideal::maximal(a));
        assert_eq!(om.hilbert_series(), m.twist(0).hilbert_series());
        assert_eq!(om.degrees(), m.degrees());
    }

    #[test]
    fn trivial_summands_keep_exactness() {
        let a = ring(&["x", "z"], &["z^2"]);
        let res = minimal_resolution(&Module::residue_field(a), 4);
        for i in 1..=4 {
            let big = res.with_trivial_summand(i);
            assert!(big.is_complex(), "complex at {}", i);
            assert!(!big.minimal);
        }
    }
}

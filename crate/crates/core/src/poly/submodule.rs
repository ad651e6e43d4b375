//! Submodules of graded free modules and the elimination-based operations
//! built on them: syzygies, preimages, intersections, colons and lifts.

use std::sync::{Arc, OnceLock};

use super::groebner::{groebner, reduce_with, LeadIndex};
use super::hilbert::{monomial_numerator, HilbertSeries};
use super::{ModOrder, Mono, Poly, PolyError, PolyRing, Vector};

/// A submodule of `P^r` given by generators, with a lazily computed reduced
/// Gröbner basis (position over term, ring order).
#[derive(Debug)]
pub struct FreeSubmodule {
    ring: Arc<PolyRing>,
    shifts: Vec<i32>,
    gens: Vec<Vector>,
    gb: OnceLock<Vec<Vector>>,
}

impl Clone for FreeSubmodule {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        FreeSubmodule {
            ring: self.ring.clone(),
            shifts: self.shifts.clone(),
            gens: self.gens.clone(),
            gb,
        }
    }
}

impl FreeSubmodule {
    pub fn new(ring: Arc<PolyRing>, shifts: Vec<i32>, gens: Vec<Vector>) -> Result<Self, PolyError> {
        let rank = shifts.len();
        for g in &gens {
            if let Some(p) = g.max_pos() {
                if p >= rank {
                    return Err(PolyError::RankMismatch {
                        expected: rank,
                        found: p + 1,
                    });
                }
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(FreeSubmodule {
            ring,
            shifts,
            gens,
            gb: OnceLock::new(),
        })
    }

    /// Ideal of `P` as a submodule of `P^1`.
    pub fn ideal(ring: Arc<PolyRing>, gens: &[Poly]) -> Self {
        let vs = gens
            .iter()
            .map(|p| Vector::from_poly_at(&ring, ModOrder::POT, p, 0))
            .collect();
        FreeSubmodule::new(ring, vec![0], vs).expect("rank one")
    }

    pub fn zero(ring: Arc<PolyRing>, shifts: Vec<i32>) -> Self {
        FreeSubmodule::new(ring, shifts, Vec::new()).expect("no generators")
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[i32] {
        &self.shifts
    }

    pub fn gens(&self) -> &[Vector] {
        &self.gens
    }

    pub fn gb(&self) -> &[Vector] {
        self.gb
            .get_or_init(|| groebner(&self.ring, &self.shifts, ModOrder::POT, &self.gens))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous(&self.shifts))
    }

    pub fn reduce(&self, v: &Vector) -> Vector {
        let gb = self.gb();
        let idx = LeadIndex::new(gb);
        reduce_with(&self.ring, ModOrder::POT, &v.reorder(&self.ring, ModOrder::POT), gb, &idx, None)
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Whether `other` is contained in `self`.
    pub fn contains_module(&self, other: &FreeSubmodule) -> bool {
        let gb = self.gb();
        let idx = LeadIndex::new(gb);
        other
            .gens
            .iter()
            .all(|g| reduce_with(&self.ring, ModOrder::POT, g, gb, &idx, None).is_zero())
    }

    pub fn same_as(&self, other: &FreeSubmodule) -> bool {
        self.gb() == other.gb()
    }

    pub fn sum(&self, other: &FreeSubmodule) -> FreeSubmodule {
        assert_eq!(self.shifts, other.shifts, "ambient modules differ");
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        FreeSubmodule::new(self.ring.clone(), self.shifts.clone(), gens).unwrap()
    }

    pub fn with_gens(&self, extra: &[Vector]) -> FreeSubmodule {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        FreeSubmodule::new(self.ring.clone(), self.shifts.clone(), gens).unwrap()
    }

    /// `p * self`.
    pub fn scale_by(&self, p: &Poly) -> FreeSubmodule {
        let gens = self
            .gens
            .iter()
            .map(|g| g.mul_poly(&self.ring, ModOrder::POT, p))
            .collect();
        FreeSubmodule::new(self.ring.clone(), self.shifts.clone(), gens).unwrap()
    }

    /// Lead monomials of the Gröbner basis, per position.
    pub fn lead_monomials(&self) -> Vec<Vec<Mono>> {
        let mut out = vec![Vec::new(); self.rank()];
        for g in self.gb() {
            let t = g.lead().unwrap();
            out[t.pos as usize].push(t.mono);
        }
        out
    }

    /// Hilbert series of `P^r / self`.
    pub fn hilbert_series(&self) -> Result<HilbertSeries, PolyError> {
        if !self.is_homogeneous() {
            return Err(PolyError::NotHomogeneous);
        }
        let weights = self.ring.weights().to_vec();
        let mut total = HilbertSeries::from_parts(Vec::new(), 0, weights.clone());
        for (k, leads) in self.lead_monomials().iter().enumerate() {
            let num = monomial_numerator(leads, &weights);
            total = total.add(&HilbertSeries::from_parts(num, self.shifts[k], weights.clone()));
        }
        Ok(total)
    }

    /// Monomials `m e_k` of total degree `d` outside the lead-term module.
    pub fn standard_monomials(&self, d: i32) -> Vec<(Mono, usize)> {
        let leads = self.lead_monomials();
        let mut out = Vec::new();
        for k in 0..self.rank() {
            let e = d - self.shifts[k];
            if e < 0 {
                continue;
            }
            for m in self.ring.monomials_of_degree(e as u32) {
                if !leads[k].iter().any(|l| l.divides(&m)) {
                    out.push((m, k));
                }
            }
        }
        out
    }
}

/// Eliminate the first `r` positions: GB of `gens` in `P^{r+m}` under POT,
/// returning the tails of the elements whose head block vanished.
fn eliminate_head(ring: &PolyRing, shifts: &[i32], r: usize, gens: &[Vector]) -> Vec<Vector> {
    let m = shifts.len() - r;
    groebner(ring, shifts, ModOrder::POT, gens)
        .into_iter()
        .filter(|g| g.lead().unwrap().pos as usize >= r)
        .map(|g| g.slice(r, r + m))
        .collect()
}

/// `{w in P^m : sum_k w_k images_k in sub}` where `images_k` live in `P^r`
/// (with shifts `target`) and `src` are the degrees of the source basis.
pub fn preimage(
    ring: &PolyRing,
    target: &[i32],
    images: &[Vector],
    src: &[i32],
    sub: &[Vector],
) -> Vec<Vector> {
    let r = target.len();
    let mut shifts = target.to_vec();
    shifts.extend_from_slice(src);
    let ord = ModOrder::POT;
    let mut gens: Vec<Vector> = images
        .iter()
        .enumerate()
        .map(|(k, h)| h.add(ring, ord, &Vector::unit(r + k)))
        .collect();
    gens.extend(sub.iter().cloned());
    eliminate_head(ring, &shifts, r, &gens)
}

/// Generators of `U ∩ Q^r`, where `Q` is the subring of `P` without the
/// variables in `mask`: a Gröbner basis under an order eliminating them,
/// restricted to the elements whose lead term avoids them.
pub fn eliminate_vars(ring: &PolyRing, shifts: &[i32], mask: u32, gens: &[Vector]) -> Vec<Vector> {
    let ord = ModOrder { elim: mask };
    let free_of_mask = |m: &Mono| (0..ring.nvars()).all(|i| mask & (1 << i) == 0 || m.exp(i) == 0);
    groebner(ring, shifts, ord, gens)
        .into_iter()
        .filter(|g| free_of_mask(&g.lead().unwrap().mono))
        .map(|g| g.reorder(ring, ModOrder::POT))
        .collect()
}

/// Kernel of `P^m -> P^r`, `e_k -> images_k`.
pub fn syzygies(ring: &PolyRing, target: &[i32], images: &[Vector], src: &[i32]) -> Vec<Vector> {
    preimage(ring, target, images, src, &[])
}

/// `U ∩ V` inside a common ambient module.
pub fn intersect(u: &FreeSubmodule, v: &FreeSubmodule) -> FreeSubmodule {
    assert_eq!(u.shifts, v.shifts, "ambient modules differ");
    let ring = &u.ring;
    let r = u.rank();
    let mut shifts = u.shifts.clone();
    shifts.extend_from_slice(&u.shifts);
    let ord = ModOrder::POT;
    let mut gens: Vec<Vector> = u
        .gens
        .iter()
        .map(|g| g.add(ring, ord, &g.offset(r)))
        .collect();
    gens.extend(v.gens.iter().cloned());
    let out = eliminate_head(ring, &shifts, r, &gens);
    FreeSubmodule::new(ring.clone(), u.shifts.clone(), out).unwrap()
}

/// `{v : g v in U}`.
pub fn colon(u: &FreeSubmodule, g: &Poly) -> FreeSubmodule {
    let ring = &u.ring;
    let r = u.rank();
    let dg = g.degree().unwrap_or(0) as i32;
    let images: Vec<Vector> = (0..r)
        .map(|k| Vector::from_poly_at(ring, ModOrder::POT, g, k))
        .collect();
    let src: Vec<i32> = u.shifts.iter().map(|s| s - dg).collect();
    let out = preimage(ring, &u.shifts, &images, &src, &u.gens);
    FreeSubmodule::new(ring.clone(), u.shifts.clone(), out).unwrap()
}

/// `(U : J) = ∩_g (U : g)` over the given generators of an ideal `J`.
pub fn colon_ideal(u: &FreeSubmodule, gens: &[Poly]) -> FreeSubmodule {
    let mut acc: Option<FreeSubmodule> = None;
    for g in gens {
        let c = colon(u, g);
        acc = Some(match acc {
            None => c,
            Some(a) => intersect(&a, &c),
        });
    }
    acc.unwrap_or_else(|| {
        // (U : 0) is everything.
        let gens = (0..u.rank()).map(Vector::unit).collect();
        FreeSubmodule::new(u.ring.clone(), u.shifts.clone(), gens).unwrap()
    })
}

/// Cofactors `w` with `sum_k w_k images_k = v`, if `v` lies in the span.
pub struct Lifter {
    ring: Arc<PolyRing>,
    r: usize,
    m: usize,
    gb: Vec<Vector>,
}

impl Lifter {
    pub fn new(ring: Arc<PolyRing>, target: &[i32], images: &[Vector], src: &[i32]) -> Self {
        let r = target.len();
        let mut shifts = target.to_vec();
        shifts.extend_from_slice(src);
        let ord = ModOrder::POT;
        let gens: Vec<Vector> = images
            .iter()
            .enumerate()
            .map(|(k, h)| h.add(&ring, ord, &Vector::unit(r + k)))
            .collect();
        let gb = groebner(&ring, &shifts, ord, &gens);
        Lifter {
            ring,
            r,
            m: src.len(),
            gb,
        }
    }

    pub fn lift(&self, v: &Vector) -> Option<Vector> {
        let idx = LeadIndex::new(&self.gb);
        let rem = reduce_with(&self.ring, ModOrder::POT, v, &self.gb, &idx, None);
        if rem.terms().iter().any(|t| (t.pos as usize) < self.r) {
            return None;
        }
        let f = self.ring.field();
        Some(rem.slice(self.r, self.r + self.m).scale(&self.ring, f.neg(1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn ring() -> Arc<PolyRing> {
        Arc::new(PolyRing::standard(101, &["x", "z"]).unwrap())
    }

    fn ideal(r: &Arc<PolyRing>, gens: &[&str]) -> FreeSubmodule {
        let ps: Vec<Poly> = gens.iter().map(|s| parse_poly(r, s).unwrap()).collect();
        FreeSubmodule::ideal(r.clone(), &ps)
    }

    fn polys(r: &Arc<PolyRing>, m: &FreeSubmodule) -> Vec<String> {
        m.gb().iter().map(|g| g.component(r, 0).fmt(r)).collect()
    }

    #[test]
    fn koszul_syzygy() {
        let r = ring();
        let i = ideal(&r, &["x", "z"]);
        let syz = syzygies(&r, &[0], i.gens(), &[1, 1]);
        assert_eq!(syz.len(), 1);
        let comps = syz[0].components(&r, 2);
        // (z, -x) up to sign
        assert_eq!(comps[0].fmt(&r), "z");
        assert_eq!(comps[1].fmt(&r), "-x");
    }

    #[test]
    fn regular_element_has_no_syzygies() {
        let r = ring();
        let i = ideal(&r, &["z^2"]);
        assert!(syzygies(&r, &[0], i.gens(), &[2]).is_empty());
    }

    #[test]
    fn syzygies_of_square_compose_to_zero() {
        let r = ring();
        let i = ideal(&r, &["x^2", "x*z", "z^2"]);
        let syz = syzygies(&r, &[0], i.gens(), &[2, 2, 2]);
        assert_eq!(syz.len(), 2);
        for s in &syz {
            let mut acc = Vector::zero();
            for (k, c) in s.components(&r, 3).iter().enumerate() {
                acc = acc.add(&r, ModOrder::POT, &i.gens()[k].mul_poly(&r, ModOrder::POT, c));
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn colons() {
        let r = ring();
        assert_eq!(polys(&r, &colon(&ideal(&r, &["x^2"]), &parse_poly(&r, "x").unwrap())), vec!["x"]);
        assert_eq!(polys(&r, &colon(&ideal(&r, &["z^2"]), &parse_poly(&r, "z").unwrap())), vec!["z"]);
        let m3 = ideal(&r, &["x^3", "x^2*z", "x*z^2", "z^3"]);
        let c = colon(&m3, &parse_poly(&r, "x").unwrap());
        assert!(c.same_as(&ideal(&r, &["x^2", "x*z", "z^2"])));
    }

    #[test]
    fn intersections() {
        let r = ring();
        let c = intersect(&ideal(&r, &["x"]), &ideal(&r, &["z"]));
        assert_eq!(polys(&r, &c), vec!["x*z"]);
        let m2 = ideal(&r, &["x^2", "x*z", "z^2"]);
        assert!(intersect(&m2, &m2).same_as(&m2));
        let c = intersect(&m2, &ideal(&r, &["z"]));
        assert!(c.same_as(&ideal(&r, &["x*z", "z^2"])));
    }

    #[test]
    fn hilbert_series_of_quotients() {
        let r = ring();
        let hs = ideal(&r, &["z^2"]).hilbert_series().unwrap();
        assert_eq!(hs.reduced_numerator(), vec![1, 1]);
        assert_eq!(hs.dimension(), Some(1));
        let k = ideal(&r, &["x", "z"]).hilbert_series().unwrap();
        assert_eq!(k.numerator, vec![1, -2, 1]);
        assert_eq!(k.dimension(), Some(0));
    }

    #[test]
    fn lifting_cofactors() {
        let r = ring();
        let gens = ideal(&r, &["x^2", "z^2"]);
        let lifter = Lifter::new(r.clone(), &[0], gens.gens(), &[2, 2]);
        let v = Vector::from_poly_at(&r, ModOrder::POT, &parse_poly(&r, "x^3 + 2*x*z^2").unwrap(), 0);
        let w = lifter.lift(&v).unwrap();
        let c = w.components(&r, 2);
        let back = gens.gens()[0]
            .mul_poly(&r, ModOrder::POT, &c[0])
            .add(&r, ModOrder::POT, &gens.gens()[1].mul_poly(&r, ModOrder::POT, &c[1]));
        assert_eq!(back, v);
        let bad = Vector::from_poly_at(&r, ModOrder::POT, &parse_poly(&r, "x*z").unwrap(), 0);
        assert!(lifter.lift(&bad).is_none());
    }
}

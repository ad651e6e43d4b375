//! Graded complete intersections `A = P/(f_1..f_c)`, ideals of `A` with
//! cached powers, and finite-length computations.

use std::sync::{Arc, Mutex};

use crate::poly::{
    FreeSubmodule, GradedQuotient, ModOrder, MonoOrder, Poly, PolyError, PolyRing, RowSpace,
    Vector,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CiError {
    #[error("relation {0} is not homogeneous of degree at least 2")]
    Degree(String),
    #[error("relations do not form a regular sequence: dim P/(f) = {found}, expected {expected}")]
    RegularSequence { expected: usize, found: usize },
    #[error("complete intersection has Krull dimension 0")]
    ZeroDimensional,
    #[error("module does not have finite length")]
    NotFiniteLength,
    #[error("ideal generator {0} is not homogeneous")]
    NotHomogeneous(String),
    #[error("element {0} is not a linear form")]
    NotLinear(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `A = P/(f)` with `f` a homogeneous regular sequence of degree-≥2 forms.
#[derive(Debug)]
pub struct CIRing {
    ring: Arc<PolyRing>,
    relations: Vec<Poly>,
    ideal: FreeSubmodule,
    algebra: GradedQuotient,
    dim: usize,
}

impl CIRing {
    /// A complete intersection of positive dimension.
    pub fn new(ring: Arc<PolyRing>, f: Vec<Poly>) -> Result<Arc<CIRing>, CiError> {
        let a = CIRing::build(ring, f)?;
        if a.dim == 0 {
            return Err(CiError::ZeroDimensional);
        }
        Ok(a)
    }

    /// The polynomial ring itself (`c = 0`).
    pub fn polynomial(ring: Arc<PolyRing>) -> Arc<CIRing> {
        CIRing::build(ring, Vec::new()).expect("empty sequence is regular")
    }

    /// Like [`CIRing::new`] but also accepting Artinian rings; used for
    /// quotients by linear forms.
    pub fn build(ring: Arc<PolyRing>, f: Vec<Poly>) -> Result<Arc<CIRing>, CiError> {
        for g in &f {
            let ok = g.is_homogeneous() && g.degree().is_some_and(|d| d >= 2);
            if !ok {
                return Err(CiError::Degree(g.fmt(&ring)));
            }
        }
        let ideal = FreeSubmodule::ideal(ring.clone(), &f);
        let hs = ideal.hilbert_series()?;
        let found = hs.dimension().unwrap_or(0);
        let expected = ring.nvars() - f.len();
        if found != expected || ring.nvars() < f.len() {
            return Err(CiError::RegularSequence { expected, found });
        }
        let algebra = GradedQuotient::new(ideal.clone());
        Ok(Arc::new(CIRing {
            ring,
            relations: f,
            ideal,
            algebra,
            dim: found,
        }))
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn codim(&self) -> usize {
        self.relations.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn characteristic(&self) -> u32 {
        self.ring.field().p()
    }

    /// `(f)` as an ideal of `P`.
    pub fn ideal(&self) -> &FreeSubmodule {
        &self.ideal
    }

    /// `A` itself, degreewise.
    pub fn algebra(&self) -> &GradedQuotient {
        &self.algebra
    }

    /// The same ring under another monomial order.
    pub fn with_order(&self, order: MonoOrder) -> Arc<CIRing> {
        let ring = Arc::new(self.ring.with_order(order));
        let f = self
            .relations
            .iter()
            .map(|g| Poly::from_terms(&ring, g.terms().to_vec()))
            .collect();
        CIRing::build(ring, f).expect("same ring")
    }

    /// Normal form modulo `(f)`.
    pub fn reduce(&self, p: &Poly) -> Poly {
        if self.relations.is_empty() {
            return p.clone();
        }
        let v = Vector::from_poly_at(&self.ring, ModOrder::POT, p, 0);
        self.ideal.reduce(&v).component(&self.ring, 0)
    }

    /// Entrywise normal form modulo `(f)`.
    pub fn reduce_vector(&self, v: &Vector) -> Vector {
        if self.relations.is_empty() {
            return v.clone();
        }
        let rank = v.max_pos().map_or(0, |p| p + 1);
        let entries: Vec<Poly> = v
            .components(&self.ring, rank)
            .iter()
            .map(|p| self.reduce(p))
            .collect();
        Vector::from_polys(&self.ring, ModOrder::POT, &entries)
    }

    /// `f_j e_k` for every basis vector of `P^rank`.
    pub fn relation_vectors(&self, rank: usize) -> Vec<Vector> {
        let mut out = Vec::new();
        for k in 0..rank {
            for g in &self.relations {
                out.push(Vector::from_poly_at(&self.ring, ModOrder::POT, g, k));
            }
        }
        out
    }

    /// `A^r` with the given shifts, degreewise.
    pub fn free_module(&self, shifts: &[i32]) -> GradedQuotient {
        let sub = FreeSubmodule::new(
            self.ring.clone(),
            shifts.to_vec(),
            self.relation_vectors(shifts.len()),
        )
        .expect("relations fit the rank");
        GradedQuotient::new(sub)
    }

    /// A minimal generating subset of the submodule of `A^r` spanned by
    /// `cands`, chosen greedily in increasing degree.
    pub fn minimal_subset(&self, shifts: &[i32], cands: &[Vector]) -> Vec<Vector> {
        let free = self.free_module(shifts);
        let mut items: Vec<(i32, Vector)> = cands
            .iter()
            .map(|v| self.reduce_vector(v))
            .filter(|v| !v.is_zero())
            .map(|v| (v.degree(shifts).unwrap(), v))
            .collect();
        items.sort_by_key(|(d, _)| *d);
        let mut kept: Vec<(i32, Vector)> = Vec::new();
        let mut i = 0;
        while i < items.len() {
            let e = items[i].0;
            let piece = free.piece(e);
            let mut space = RowSpace::new(self.ring.field(), piece.dim());
            for (dg, g) in &kept {
                for &(mono, _) in &self.algebra.piece(e - dg).basis {
                    space.insert(free.coords(&g.mul_term(&self.ring, &mono, 1), e));
                }
            }
            while i < items.len() && items[i].0 == e {
                let v = &items[i].1;
                if space.insert(free.coords(v, e)) {
                    kept.push((e, v.clone()));
                }
                i += 1;
            }
        }
        kept.into_iter().map(|(_, v)| v).collect()
    }

    /// `A/(x)` for a linear form `x`, by solving for one variable.
    pub fn quotient_by_linear(&self, x: &Poly) -> Result<(Arc<CIRing>, LinearSection), CiError> {
        let ring = &self.ring;
        let linear = x.is_homogeneous()
            && x.terms().iter().all(|(m, _)| {
                (0..ring.nvars()).map(|v| m.exp(v) as u32).sum::<u32>() == 1
            })
            && !x.is_zero();
        let pivot = x
            .terms()
            .iter()
            .map(|(m, c)| ((0..ring.nvars()).find(|&v| m.exp(v) == 1).unwrap(), *c)).rfind(|&(v, _)| ring.weights()[v] == x.degree().unwrap_or(0));
        let Some((pivot, coef)) = pivot.filter(|_| linear) else {
            return Err(CiError::NotLinear(x.fmt(ring)));
        };
        let f = ring.field();
        // x_pivot = -(1/coef) * (x - coef * x_pivot)
        let rest = x.sub(ring, &Poly::term(ring.var(pivot), coef));
        let image = rest.scale(ring, f.neg(f.inv(coef)));
        let names: Vec<String> = ring
            .names()
            .iter()
            .enumerate()
            .filter(|&(v, _)| v != pivot)
            .map(|(_, s)| s.clone())
            .collect();
        let weights: Vec<u32> = ring
            .weights()
            .iter()
            .enumerate()
            .filter(|&(v, _)| v != pivot)
            .map(|(_, &w)| w)
            .collect();
        let target = Arc::new(PolyRing::new(f, names, weights, ring.order())?);
        let var_map: Vec<Option<usize>> = (0..ring.nvars())
            .map(|v| match v.cmp(&pivot) {
                std::cmp::Ordering::Less => Some(v),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(v - 1),
            })
            .collect();
        let section = LinearSection {
            source: ring.clone(),
            target: target.clone(),
            pivot,
            image,
            var_map,
        };
        let fs: Vec<Poly> = self.relations.iter().map(|g| section.apply(g)).collect();
        let q = CIRing::build(target, fs)?;
        if q.dim + 1 != self.dim {
            return Err(CiError::RegularSequence {
                expected: self.dim - 1,
                found: q.dim,
            });
        }
        Ok((q, section))
    }
}

/// The ring map `P -> P/(x)` for a linear form `x`, realised as a
/// polynomial ring in the remaining variables.
#[derive(Debug, Clone)]
pub struct LinearSection {
    source: Arc<PolyRing>,
    target: Arc<PolyRing>,
    pivot: usize,
    image: Poly,
    var_map: Vec<Option<usize>>,
}

impl LinearSection {
    pub fn target(&self) -> &Arc<PolyRing> {
        &self.target
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        let s = p.substitute(&self.source, self.pivot, &self.image);
        s.remap(&self.source, &self.target, &self.var_map)
    }

    pub fn apply_vector(&self, v: &Vector) -> Vector {
        let rank = v.max_pos().map_or(0, |p| p + 1);
        let entries: Vec<Poly> = v
            .components(&self.source, rank)
            .iter()
            .map(|p| self.apply(p))
            .collect();
        Vector::from_polys(&self.target, ModOrder::POT, &entries)
    }
}

/// A homogeneous ideal of a complete intersection, with cached powers.
#[derive(Debug)]
pub struct Ideal {
    ring: Arc<CIRing>,
    gens: Vec<Poly>,
    powers: Mutex<Vec<Arc<FreeSubmodule>>>,
    quotients: Mutex<Vec<Option<Arc<GradedQuotient>>>>,
}

impl Ideal {
    pub fn new(ring: Arc<CIRing>, gens: Vec<Poly>) -> Result<Arc<Ideal>, CiError> {
        for g in &gens {
            if !g.is_homogeneous() {
                return Err(CiError::NotHomogeneous(g.fmt(ring.ring())));
            }
        }
        let gens: Vec<Poly> = gens
            .iter()
            .map(|g| ring.reduce(g))
            .filter(|g| !g.is_zero())
            .collect();
        let unit = Arc::new(FreeSubmodule::ideal(
            ring.ring().clone(),
            &[Poly::constant(ring.ring(), 1)],
        ));
        Ok(Arc::new(Ideal {
            ring,
            gens,
            powers: Mutex::new(vec![unit]),
            quotients: Mutex::new(Vec::new()),
        }))
    }

    /// The irrelevant maximal ideal.
    pub fn maximal(ring: Arc<CIRing>) -> Arc<Ideal> {
        let gens = (0..ring.ring().nvars())
            .map(|v| Poly::var(ring.ring(), v))
            .collect();
        Ideal::new(ring, gens).expect("variables are homogeneous")
    }

    pub fn ring(&self) -> &Arc<CIRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    /// `I^n + (f)` as an ideal of `P`.
    pub fn power(&self, n: usize) -> Arc<FreeSubmodule> {
        let mut powers = self.powers.lock().unwrap();
        let r = self.ring.ring();
        while powers.len() <= n {
            let prev = powers.last().unwrap().clone();
            let mut prods = Vec::new();
            for g in prev.gb() {
                let g = self.ring.reduce(&g.component(r, 0));
                if g.is_zero() {
                    continue;
                }
                for h in &self.gens {
                    prods.push(g.mul(r, h));
                }
            }
            prods.extend(self.ring.relations().iter().cloned());
            powers.push(Arc::new(FreeSubmodule::ideal(r.clone(), &prods)));
        }
        powers[n].clone()
    }

    /// Generators of `I^n` as elements of `A`.
    pub fn power_gens(&self, n: usize) -> Vec<Poly> {
        let r = self.ring.ring();
        self.power(n)
            .gb()
            .iter()
            .map(|g| self.ring.reduce(&g.component(r, 0)))
            .filter(|g| !g.is_zero())
            .collect()
    }

    /// `A/I^n`, degreewise.
    pub fn quotient(&self, n: usize) -> Arc<GradedQuotient> {
        {
            let q = self.quotients.lock().unwrap();
            if let Some(Some(g)) = q.get(n) {
                return g.clone();
            }
        }
        let g = Arc::new(GradedQuotient::new((*self.power(n)).clone()));
        let mut q = self.quotients.lock().unwrap();
        if q.len() <= n {
            q.resize(n + 1, None);
        }
        q[n] = Some(g.clone());
        g
    }

    pub fn is_m_primary(&self) -> bool {
        self.power(1)
            .hilbert_series()
            .map(|hs| hs.dimension().is_none_or(|d| d == 0))
            .unwrap_or(false)
    }

    /// `ℓ(A/I^n)`.
    pub fn colength(&self, n: usize) -> Result<usize, CiError> {
        self.quotient(n).length().ok_or(CiError::NotFiniteLength)
    }
}

/// Length of a finite-length graded quotient.
pub fn length(q: &GradedQuotient) -> Result<usize, CiError> {
    q.length().ok_or(CiError::NotFiniteLength)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn a1() -> Arc<CIRing> {
        let r = Arc::new(PolyRing::standard(101, &["x", "z"]).unwrap());
        let f = vec![parse_poly(&r, "z^2").unwrap()];
        CIRing::new(r, f).unwrap()
    }

    #[test]
    fn fixture_dimensions() {
        let a = a1();
        assert_eq!((a.dim(), a.codim()), (1, 1));
        let r = Arc::new(PolyRing::standard(101, &["x", "z1", "z2"]).unwrap());
        let f = vec![parse_poly(&r, "z1^2").unwrap(), parse_poly(&r, "z2^2").unwrap()];
        let a2 = CIRing::new(r, f).unwrap();
        assert_eq!((a2.dim(), a2.codim()), (1, 2));
    }

    #[test]
    fn rejects_bad_sequences() {
        let r = Arc::new(PolyRing::standard(101, &["x", "z"]).unwrap());
        let f = vec![parse_poly(&r, "z^2").unwrap(), parse_poly(&r, "z^3").unwrap()];
        assert!(matches!(
            CIRing::new(r.clone(), f),
            Err(CiError::RegularSequence { .. })
        ));
        let f = vec![parse_poly(&r, "z").unwrap()];
        assert!(matches!(CIRing::new(r.clone(), f), Err(CiError::Degree(_))));
        let f = vec![parse_poly(&r, "z^2").unwrap(), parse_poly(&r, "x^2").unwrap()];
        assert!(matches!(CIRing::new(r, f), Err(CiError::ZeroDimensional)));
    }

    #[test]
    fn primary_ideals_and_lengths() {
        let a = a1();
        let r = a.ring().clone();
        let m = Ideal::maximal(a.clone());
        let j = Ideal::new(a.clone(), vec![parse_poly(&r, "x").unwrap()]).unwrap();
        assert!(m.is_m_primary());
        assert!(j.is_m_primary());
        for n in 1..=6 {
            assert_eq!(m.colength(n).unwrap(), 2 * n - 1);
            assert_eq!(j.colength(n).unwrap(), 2 * n);
        }
        let z = Ideal::new(a, vec![parse_poly(&r, "z").unwrap()]).unwrap();
        assert!(!z.is_m_primary());
        assert!(z.colength(1).is_err());
    }

    #[test]
    fn quotient_by_linear_form() {
        let a = a1();
        let x = parse_poly(a.ring(), "x").unwrap();
        let (b, sec) = a.quotient_by_linear(&x).unwrap();
        assert_eq!(b.dim(), 0);
        assert_eq!(b.ring().nvars(), 1);
        let p = parse_poly(a.ring(), "x*z + z^2 + 3").unwrap();
        assert_eq!(sec.apply(&p).fmt(b.ring()), "z^2 + 3");
        let z = parse_poly(a.ring(), "z").unwrap();
        assert!(a.quotient_by_linear(&z).is_err());
    }

    #[test]
    fn minimal_subsets_drop_redundant_generators() {
        let a = a1();
        let r = a.ring();
        let v = |s: &str| Vector::from_poly_at(r, ModOrder::POT, &parse_poly(r, s).unwrap(), 0);
        let kept = a.minimal_subset(&[0], &[v("x"), v("x^2"), v("x*z + z^2"), v("z")]);
        assert_eq!(kept.len(), 2);
    }
}

//! Graded modules over a complete intersection: presentations, maps,
//! minimal free resolutions, depth, cosyzygies, cones and MCM
//! approximations, and complexity reduction.

mod cone;
mod homology;
mod reduce;
mod resolution;

use std::sync::Arc;

pub use cone::{cone, cosyzygy, mcm_approx, stable_shift, stably_isomorphic, Approximation, ConeWitness};
pub use homology::{ext_dim, ext_length, hom_window_dims, tor_dim, tor_length};
pub use reduce::{reduce_complexity, ComplexityReduction};
pub use resolution::{depth, is_mcm, minimal_resolution, projective_dimension, require_mcm, syzygy, FreeResolution};

use crate::ci_ring::{CIRing, CiError, Ideal};
use crate::poly::{preimage, FreeSubmodule, GradedQuotient, HilbertSeries, ModOrder, Poly, Vector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ResolveError {
    #[error("module is not maximal Cohen-Macaulay (depth {depth} < dim {dim})")]
    NotMcm { depth: usize, dim: usize },
    #[error("sequence is not regular on the module: {0}")]
    RegularSequence(String),
    #[error("complexity {0} is too low to reduce")]
    ComplexityTooLow(usize),
    #[error("no surjective operator found; seeds tried: {seeds:?}")]
    Genericity { seeds: Vec<u64> },
    #[error("resolution computed to {have}, need {need}")]
    CutoffTooSmall { have: usize, need: usize },
    #[error("relations of degree {degrees:?} required for reduce-complexity must be equal")]
    UnequalDegrees { degrees: Vec<u32> },
    #[error("malformed module data: {0}")]
    Shape(String),
    #[error(transparent)]
    Ring(#[from] CiError),
}

/// A graded module `coker(A^m -> A^r)`; relations are columns in `P^r`
/// kept in normal form modulo `(f)`.
#[derive(Clone, Debug)]
pub struct Module {
    ring: Arc<CIRing>,
    degrees: Vec<i32>,
    relations: Vec<Vector>,
}

impl Module {
    pub fn new(ring: Arc<CIRing>, degrees: Vec<i32>, relations: Vec<Vector>) -> Result<Module, ResolveError> {
        let mut rels = Vec::new();
        for v in &relations {
            if let Some(p) = v.max_pos() {
                if p >= degrees.len() {
                    return Err(ResolveError::Shape(format!(
                        "relation has rank {} but the module has {} generators",
                        p + 1,
                        degrees.len()
                    )));
                }
            }
            let v = ring.reduce_vector(v);
            if v.is_zero() {
                continue;
            }
            if !v.is_homogeneous(&degrees) {
                return Err(ResolveError::Shape(format!(
                    "relation {} is not homogeneous",
                    v.fmt(ring.ring(), degrees.len())
                )));
            }
            rels.push(v);
        }
        Ok(Module {
            ring,
            degrees,
            relations: rels,
        })
    }

    pub fn free(ring: Arc<CIRing>, degrees: Vec<i32>) -> Module {
        Module {
            ring,
            degrees,
            relations: Vec::new(),
        }
    }

    pub fn zero(ring: Arc<CIRing>) -> Module {
        Module::free(ring, Vec::new())
    }

    /// `A/(gens)`.
    pub fn cyclic(ring: Arc<CIRing>, gens: &[Poly]) -> Result<Module, ResolveError> {
        let rels = gens
            .iter()
            .map(|g| Vector::from_poly_at(ring.ring(), ModOrder::POT, g, 0))
            .collect();
        Module::new(ring, vec![0], rels)
    }

    pub fn residue_field(ring: Arc<CIRing>) -> Module {
        let gens: Vec<Poly> = (0..ring.ring().nvars())
            .map(|v| Poly::var(ring.ring(), v))
            .collect();
        Module::cyclic(ring, &gens).expect("variables are homogeneous")
    }

    /// The ideal `I` as an `A`-module.
    pub fn ideal(i: &Ideal) -> Module {
        let ring = i.ring().clone();
        let r = ring.ring().clone();
        let gens: Vec<Vector> = i
            .gens()
            .iter()
            .map(|g| Vector::from_poly_at(&r, ModOrder::POT, g, 0))
            .collect();
        let degrees: Vec<i32> = i.gens().iter().map(|g| g.degree().unwrap() as i32).collect();
        Module::submodule_of(&Module::free(ring, vec![0]), &gens, &degrees)
    }

    pub fn ring(&self) -> &Arc<CIRing> {
        &self.ring
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn relations(&self) -> &[Vector] {
        &self.relations
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// Relations together with `f_j e_k`, as a submodule of `P^r`.
    pub fn relation_module(&self) -> FreeSubmodule {
        let mut gens = self.relations.clone();
        gens.extend(self.ring.relation_vectors(self.rank()));
        FreeSubmodule::new(self.ring.ring().clone(), self.degrees.clone(), gens).unwrap()
    }

    pub fn quotient(&self) -> GradedQuotient {
        GradedQuotient::new(self.relation_module())
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        self.relation_module()
            .hilbert_series()
            .expect("presentations are homogeneous")
    }

    pub fn is_zero(&self) -> bool {
        self.hilbert_series().is_zero()
    }

    pub fn length(&self) -> Result<usize, ResolveError> {
        self.hilbert_series()
            .total_length()
            .map(|v| v as usize)
            .ok_or(ResolveError::Ring(CiError::NotFiniteLength))
    }

    pub fn direct_sum(&self, other: &Module) -> Module {
        let r = self.rank();
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        let mut relations = self.relations.clone();
        relations.extend(other.relations.iter().map(|v| v.offset(r)));
        Module {
            ring: self.ring.clone(),
            degrees,
            relations,
        }
    }

    /// `M(k)`: generator degrees lowered by `k`.
    pub fn twist(&self, k: i32) -> Module {
        Module {
            ring: self.ring.clone(),
            degrees: self.degrees.iter().map(|d| d - k).collect(),
            relations: self.relations.clone(),
        }
    }

    /// `M / (xs) M`.
    pub fn mod_elements(&self, xs: &[Poly]) -> Module {
        let r = self.ring.ring();
        let mut relations = self.relations.clone();
        for x in xs {
            for k in 0..self.rank() {
                relations.push(Vector::from_poly_at(r, ModOrder::POT, x, k));
            }
        }
        Module::new(self.ring.clone(), self.degrees.clone(), relations).unwrap()
    }

    /// The same module over `ring`, which must have the same variables.
    pub fn over(&self, ring: Arc<CIRing>) -> Module {
        let r = ring.ring().clone();
        let relations = self
            .relations
            .iter()
            .map(|v| Vector::from_terms(&r, ModOrder::POT, v.terms().to_vec()))
            .collect();
        Module::new(ring, self.degrees.clone(), relations).unwrap()
    }

    /// The submodule of `self` generated by the classes of `gens`
    /// (vectors in the ambient free module), presented on those generators.
    pub fn submodule_of(ambient: &Module, gens: &[Vector], degrees: &[i32]) -> Module {
        let ring = &ambient.ring;
        let mut sub = ambient.relations.clone();
        sub.extend(ring.relation_vectors(ambient.rank()));
        let rels: Vec<Vector> = preimage(ring.ring(), &ambient.degrees, gens, degrees, &sub)
            .iter()
            .map(|v| ring.reduce_vector(v))
            .filter(|v| !v.is_zero())
            .collect();
        Module::new(ring.clone(), degrees.to_vec(), rels).unwrap()
    }

    /// An isomorphic module with a minimal presentation: unit entries are
    /// eliminated, then redundant relations dropped.
    pub fn minimize(&self) -> Module {
        let ring = self.ring.ring().clone();
        let f = ring.field();
        let mut degrees = self.degrees.clone();
        let mut cols: Vec<Vec<Poly>> = self
            .relations
            .iter()
            .map(|v| v.components(&ring, degrees.len()))
            .collect();
        loop {
            let mut found = None;
            'search: for (j, col) in cols.iter().enumerate() {
                for (k, p) in col.iter().enumerate() {
                    if !p.is_zero() && p.degree() == Some(0) {
                        found = Some((j, k, p.constant_term()));
                        break 'search;
                    }
                }
            }
            let Some((j, k, c)) = found else { break };
            let pivot = cols.remove(j);
            let cinv = f.inv(c);
            for col in cols.iter_mut() {
                let a = col[k].clone();
                if a.is_zero() {
                    continue;
                }
                let factor = a.scale(&ring, f.neg(cinv));
                for (q, pq) in col.iter_mut().zip(pivot.iter()) {
                    *q = self.ring.reduce(&q.add(&ring, &pq.mul(&ring, &factor)));
                }
            }
            for col in cols.iter_mut() {
                col.remove(k);
            }
            degrees.remove(k);
        }
        let rels: Vec<Vector> = cols
            .iter()
            .map(|c| Vector::from_polys(&ring, ModOrder::POT, c))
            .collect();
        let rels = self.ring.minimal_subset(&degrees, &rels);
        Module {
            ring: self.ring.clone(),
            degrees,
            relations: rels,
        }
    }

    pub fn fmt(&self) -> String {
        let r = self.ring.ring();
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|v| v.fmt(r, self.rank()))
            .collect();
        format!("generators {:?}, relations [{}]", self.degrees, rels.join(", "))
    }
}

/// A homogeneous map between presented modules, given by the images of the
/// source generators in the target's free module.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: Module,
    pub target: Module,
    pub images: Vec<Vector>,
}

impl ModuleMap {
    pub fn new(source: Module, target: Module, images: Vec<Vector>) -> Result<ModuleMap, ResolveError> {
        if images.len() != source.rank() {
            return Err(ResolveError::Shape("one image per source generator".into()));
        }
        let ring = source.ring.clone();
        let images: Vec<Vector> = images.iter().map(|v| ring.reduce_vector(v)).collect();
        let map = ModuleMap {
            source,
            target,
            images,
        };
        let rel = map.target.relation_module();
        for v in &map.source.relations {
            if !rel.contains(&map.apply(v)) {
                return Err(ResolveError::Shape("map does not respect relations".into()));
            }
        }
        Ok(map)
    }

    /// Multiplication by a homogeneous element on `M`.
    pub fn scalar(m: &Module, x: &Poly) -> ModuleMap {
        let r = m.ring.ring();
        let dx = x.degree().unwrap_or(0) as i32;
        let images = (0..m.rank())
            .map(|k| Vector::from_poly_at(r, ModOrder::POT, x, k))
            .collect();
        ModuleMap::new(m.twist(-dx), m.clone(), images).unwrap()
    }

    pub fn identity(m: &Module) -> ModuleMap {
        let images = (0..m.rank()).map(Vector::unit).collect();
        ModuleMap::new(m.clone(), m.clone(), images).unwrap()
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let r = self.source.ring.ring();
        let mut acc = Vector::zero();
        for (k, c) in v.components(r, self.source.rank()).iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(r, ModOrder::POT, &self.images[k].mul_poly(r, ModOrder::POT, c));
            }
        }
        self.source.ring.reduce_vector(&acc)
    }

    /// Preimage of the target relations, in the source free module.
    pub fn kernel_sub(&self) -> FreeSubmodule {
        let ring = &self.source.ring;
        let target = self.target.relation_module();
        let mut gens = preimage(
            ring.ring(),
            &self.target.degrees,
            &self.images,
            &self.source.degrees,
            target.gens(),
        );
        gens.extend(self.source.relation_module().gens().iter().cloned());
        FreeSubmodule::new(ring.ring().clone(), self.source.degrees.clone(), gens).unwrap()
    }

    /// Image plus target relations, in the target free module.
    pub fn image_sub(&self) -> FreeSubmodule {
        self.target.relation_module().with_gens(&self.images)
    }

    pub fn kernel_module(&self) -> Module {
        let ker = self.kernel_sub();
        let gens: Vec<Vector> = self
            .source
            .ring
            .minimal_subset(&self.source.degrees, ker.gens());
        let degrees: Vec<i32> = gens
            .iter()
            .map(|g| g.degree(&self.source.degrees).unwrap())
            .collect();
        Module::submodule_of(&self.source, &gens, &degrees).minimize()
    }

    pub fn is_injective(&self) -> bool {
        self.source.relation_module().contains_module(&self.kernel_sub())
    }

    pub fn is_surjective(&self) -> bool {
        let image = self.image_sub();
        (0..self.target.rank()).all(|k| image.contains(&Vector::unit(k)))
    }

    pub fn compose(&self, after: &ModuleMap) -> ModuleMap {
        let images = self.images.iter().map(|v| after.apply(v)).collect();
        ModuleMap::new(self.source.clone(), after.target.clone(), images).unwrap()
    }
}

/// Whether `X -a-> Y -b-> Z` is exact at `Y`.
pub fn exact_at(a: &ModuleMap, b: &ModuleMap) -> bool {
    a.image_sub().same_as(&b.kernel_sub())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, PolyRing};

    pub(crate) fn a1() -> Arc<CIRing> {
        let r = Arc::new(PolyRing::standard(101, &["x", "z"]).unwrap());
        let f = vec![parse_poly(&r, "z^2").unwrap()];
        CIRing::new(r, f).unwrap()
    }

    #[test]
    fn minimize_prunes_units() {
        let a = a1();
        let r = a.ring().clone();
        // A^2 / ((1, x), (0, z)) ≅ A/(z) after eliminating the first generator.
        let rels = vec![
            Vector::from_polys(&r, ModOrder::POT, &[Poly::constant(&r, 1), parse_poly(&r, "x").unwrap()]),
            Vector::from_polys(&r, ModOrder::POT, &[Poly::zero(), parse_poly(&r, "z").unwrap()]),
        ];
        let m = Module::new(a.clone(), vec![1, 0], rels).unwrap();
        let mm = m.minimize();
        assert_eq!(mm.rank(), 1);
        assert_eq!(mm.degrees(), &[0]);
        assert_eq!(mm.relations().len(), 1);
        assert_eq!(m.hilbert_series(), mm.hilbert_series());
    }

    #[test]
    fn ideal_modules() {
        let a = a1();
        let m = Ideal::maximal(a.clone());
        let mm = Module::ideal(&m);
        assert_eq!(mm.degrees(), &[1, 1]);
        // HF of m1: 0, 2, 2, 2, ...
        let q = mm.quotient();
        assert_eq!((0..5).map(|e| q.dim(e)).collect::<Vec<_>>(), vec![0, 2, 2, 2, 2]);
    }

    #[test]
    fn maps_kernels_and_exactness() {
        let a = a1();
        let r = a.ring().clone();
        let z = parse_poly(&r, "z").unwrap();
        let m1 = Module::cyclic(a.clone(), std::slice::from_ref(&z)).unwrap();
        let free = Module::free(a.clone(), vec![0]);
        // 0 -> M1(-1) -z-> A -> M1 -> 0
        let incl = ModuleMap::new(m1.twist(-1), free.clone(), vec![Vector::from_poly_at(&r, ModOrder::POT, &z, 0)]).unwrap();
        let proj = ModuleMap::new(free.clone(), m1.clone(), vec![Vector::unit(0)]).unwrap();
        assert!(incl.is_injective());
        assert!(proj.is_surjective());
        assert!(!proj.is_injective());
        assert!(exact_at(&incl, &proj));
        let x = ModuleMap::scalar(&m1, &parse_poly(&r, "x").unwrap());
        assert!(x.is_injective());
        assert!(!x.is_surjective());
        assert!(ModuleMap::new(m1.clone(), free, vec![Vector::unit(0)]).is_err());
    }
}

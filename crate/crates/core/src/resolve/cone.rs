//! Cosyzygies over a Gorenstein ring, the pushout cone of a map of MCM
//! modules and iterated-cone MCM approximations of `M / (x_1..x_r) M`.

use super::resolution::{kernel_over, minimal_resolution, require_mcm};
use super::{exact_at, Module, ModuleMap, ResolveError};
use crate::poly::{ModOrder, Poly, Vector};

/// `M ↪ G*` with cokernel `Ω⁻¹M`, from a presentation of `M`.
struct Embedding {
    /// Generator degrees of the free module `G*`.
    free_degrees: Vec<i32>,
    /// Image of each generator of `M` in `G*`.
    images: Vec<Vector>,
}

fn embedding(m: &Module) -> Embedding {
    let ring = m.ring();
    let r = ring.ring();
    let rank = m.rank();
    let g: Vec<i32> = m.degrees().to_vec();
    if m.relations().is_empty() {
        // M free: M* = F0*, G* = F0 and the embedding is the identity.
        return Embedding {
            free_degrees: g,
            images: (0..rank).map(Vector::unit).collect(),
        };
    }
    let s: Vec<i32> = m
        .relations()
        .iter()
        .map(|v| v.degree(&g).unwrap())
        .collect();
    let nrel = s.len();
    let comps: Vec<Vec<Poly>> = m.relations().iter().map(|v| v.components(r, rank)).collect();
    // φ^T : F0* -> F1*, column k = Σ_l φ_{k,l} e_l
    let cols: Vec<Vector> = (0..rank)
        .map(|k| {
            let polys: Vec<Poly> = (0..nrel).map(|l| comps[l][k].clone()).collect();
            Vector::from_polys(r, ModOrder::POT, &polys)
        })
        .collect();
    let neg_s: Vec<i32> = s.iter().map(|d| -d).collect();
    let neg_g: Vec<i32> = g.iter().map(|d| -d).collect();
    let mut ker = kernel_over(ring, &neg_s, &cols, &neg_g);
    if cols.iter().all(|c| c.is_zero()) {
        ker = (0..rank).map(Vector::unit).collect();
    }
    let kgens = ring.minimal_subset(&neg_g, &ker);
    let kappa: Vec<i32> = kgens.iter().map(|v| v.degree(&neg_g).unwrap()).collect();
    let kcomps: Vec<Vec<Poly>> = kgens.iter().map(|v| v.components(r, rank)).collect();
    let images = (0..rank)
        .map(|k| {
            let polys: Vec<Poly> = kcomps.iter().map(|c| c[k].clone()).collect();
            Vector::from_polys(r, ModOrder::POT, &polys)
        })
        .collect();
    Embedding {
        free_degrees: kappa.iter().map(|d| -d).collect(),
        images,
    }
}

fn cosyzygy_raw(m: &Module) -> (Module, Embedding) {
    let emb = embedding(m);
    let c = Module::new(m.ring().clone(), emb.free_degrees.clone(), emb.images.clone())
        .expect("embedding is homogeneous");
    (c, emb)
}

/// `Ω⁻¹(M)` for an MCM module, minimally presented.
pub fn cosyzygy(m: &Module) -> Result<Module, ResolveError> {
    require_mcm(m)?;
    Ok(cosyzygy_raw(&m.minimize()).0.minimize())
}

/// The exact row `0 -> N -> C(f) -> Ω⁻¹M -> 0` with its maps.
#[derive(Clone, Debug)]
pub struct ConeWitness {
    pub map: ModuleMap,
    pub cone: Module,
    pub cosyzygy: Module,
    pub inclusion: ModuleMap,
    pub projection: ModuleMap,
    pub exact: bool,
}

/// The pushout `C(f)` of `f : M -> N` along `M ↪ G*`.
pub fn cone(f: &ModuleMap) -> Result<ConeWitness, ResolveError> {
    require_mcm(&f.source)?;
    require_mcm(&f.target)?;
    let ring = f.source.ring().clone();
    let r = ring.ring().clone();
    let n = &f.target;
    let nr = n.rank();
    let (omega, emb) = cosyzygy_raw(&f.source);
    let mut degrees = n.degrees().to_vec();
    degrees.extend_from_slice(&emb.free_degrees);
    let mut rels: Vec<Vector> = n.relations().to_vec();
    for (img_n, img_g) in f.images.iter().zip(&emb.images) {
        rels.push(img_n.sub(&r, ModOrder::POT, &img_g.offset(nr)));
    }
    let c = Module::new(ring.clone(), degrees, rels)?;
    let inclusion = ModuleMap::new(n.clone(), c.clone(), (0..nr).map(Vector::unit).collect())?;
    let mut proj = vec![Vector::zero(); nr];
    proj.extend((0..emb.free_degrees.len()).map(Vector::unit));
    let projection = ModuleMap::new(c.clone(), omega.clone(), proj)?;
    let exact = inclusion.is_injective() && projection.is_surjective() && exact_at(&inclusion, &projection);
    Ok(ConeWitness {
        map: f.clone(),
        cone: c,
        cosyzygy: omega,
        inclusion,
        projection,
        exact,
    })
}

/// `0 -> Y -> V -> M/(xs)M -> 0` with `V` MCM and `pd Y` finite.
#[derive(Clone, Debug)]
pub struct Approximation {
    pub approximation: Module,
    pub quotient: Module,
    pub map: ModuleMap,
    pub kernel: Module,
    pub cones: Vec<ConeWitness>,
    pub surjective: bool,
    /// `b_{d+1}(Y) = 0`, so `Y` has finite projective dimension.
    pub kernel_finite_pd: bool,
    pub depth: usize,
}

fn check_regular(m: &Module, xs: &[Poly]) -> Result<(), ResolveError> {
    let ring = m.ring();
    let free = Module::free(ring.clone(), vec![0]);
    for (a, x) in xs.iter().enumerate() {
        if x.is_zero() || !x.is_homogeneous() {
            return Err(ResolveError::RegularSequence("elements must be nonzero and homogeneous".into()));
        }
        for base in [m, &free] {
            let q = base.mod_elements(&xs[..a]);
            if !ModuleMap::scalar(&q, x).is_injective() {
                return Err(ResolveError::RegularSequence(format!(
                    "{} is a zero divisor modulo the previous elements",
                    x.fmt(ring.ring())
                )));
            }
        }
    }
    Ok(())
}

/// Iterated cones `V_i = C(V_{i-1} -x_i-> V_{i-1})`.
pub fn mcm_approx(m: &Module, xs: &[Poly]) -> Result<Approximation, ResolveError> {
    require_mcm(m)?;
    check_regular(m, xs)?;
    let ring = m.ring().clone();
    let quotient = m.mod_elements(xs);
    let mut v = m.clone();
    // images of the generators of V in the free module of M/(xs)M
    let mut to_quotient: Vec<Vector> = (0..m.rank()).map(Vector::unit).collect();
    let mut cones = Vec::new();
    for x in xs {
        let w = cone(&ModuleMap::scalar(&v, x))?;
        let extra = w.cone.rank() - v.rank();
        to_quotient.extend(std::iter::repeat_n(Vector::zero(), extra));
        v = w.cone.clone();
        cones.push(w);
    }
    let map = ModuleMap::new(v.clone(), quotient.clone(), to_quotient)?;
    let surjective = map.is_surjective();
    let kernel = map.kernel_module();
    let d = ring.dim();
    let kernel_finite_pd = minimal_resolution(&kernel, d + 1).betti()[d + 1] == 0;
    let depth = super::depth(&v);
    Ok(Approximation {
        approximation: v,
        quotient,
        map,
        kernel,
        cones,
        surjective,
        kernel_finite_pd,
        depth,
    })
}

/// Shift `s` with `a ≅ b(s)` in the stable category, judged by graded
/// Betti numbers in homological degrees `1..=cutoff` and the Hilbert
/// series of the first syzygy. Sound but incomplete as an isomorphism test.
pub fn stable_shift(a: &Module, b: &Module, cutoff: usize) -> Option<i32> {
    let ra = minimal_resolution(a, cutoff + 1);
    let rb = minimal_resolution(b, cutoff + 1);
    let higher = |r: &super::FreeResolution| -> Vec<Vec<i32>> {
        r.degrees[1..=cutoff]
            .iter()
            .map(|d| {
                let mut d = d.clone();
                d.sort();
                d
            })
            .collect()
    };
    let (ha, hb) = (higher(&ra), higher(&rb));
    if ha.iter().map(Vec::len).ne(hb.iter().map(Vec::len)) {
        return None;
    }
    let shift = match (ha.iter().flatten().next(), hb.iter().flatten().next()) {
        (None, None) => return Some(0),
        (Some(x), Some(y)) => y - x,
        _ => return None,
    };
    let shifted: Vec<Vec<i32>> = ha.iter().map(|d| d.iter().map(|g| g + shift).collect()).collect();
    if shifted != hb {
        return None;
    }
    let omega = |r: &super::FreeResolution, s: i32| {
        Module::new(r.ring().clone(), r.degrees[1].iter().map(|g| g + s).collect(), r.maps[1].clone())
            .unwrap()
            .hilbert_series()
    };
    (omega(&ra, shift) == omega(&rb, 0)).then_some(shift)
}

pub fn stably_isomorphic(a: &Module, b: &Module, cutoff: usize) -> bool {
    stable_shift(a, b, cutoff) == Some(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ci_ring::CIRing;
    use crate::poly::{parse_poly, PolyRing};
    use crate::resolve::{is_mcm, syzygy};
    use std::sync::Arc;

    fn ring(names: &[&str], f: &[&str]) -> Arc<CIRing> {
        let r = Arc::new(PolyRing::standard(101, names).unwrap());
        let f = f.iter().map(|s| parse_poly(&r, s).unwrap()).collect();
        CIRing::new(r, f).unwrap()
    }

    fn m1() -> Module {
        let a = ring(&["x", "z"], &["z^2"]);
        Module::cyclic(a.clone(), &[parse_poly(a.ring(), "z").unwrap()]).unwrap()
    }

    #[test]
    fn cosyzygy_of_m1_is_a_shift_of_m1() {
        let m = m1();
        let c = cosyzygy(&m).unwrap();
        assert_eq!(c.degrees(), &[-1]);
        assert_eq!(stable_shift(&c, &m, 3), Some(1));
        assert!(stably_isomorphic(&syzygy(&c, 1), &m, 3));
        let free = Module::free(m.ring().clone(), vec![0, 2]);
        assert!(cosyzygy(&free).unwrap().is_zero());
        let k = Module::residue_field(m.ring().clone());
        assert!(matches!(cosyzygy(&k), Err(ResolveError::NotMcm { .. })));
    }

    #[test]
    fn cones_of_basic_maps() {
        let m = m1();
        let r = m.ring().ring().clone();
        let id = cone(&ModuleMap::identity(&m)).unwrap();
        assert!(id.exact);
        assert!(minimal_resolution(&id.cone, 2).betti()[1..].iter().all(|&b| b == 0));
        let zero = ModuleMap::new(m.clone(), m.clone(), vec![Vector::zero()]).unwrap();
        let z = cone(&zero).unwrap();
        assert!(z.exact);
        let sum = m.direct_sum(&cosyzygy(&m).unwrap());
        assert!(stably_isomorphic(&z.cone, &sum, 3));
        let x = cone(&ModuleMap::scalar(&m, &parse_poly(&r, "x").unwrap())).unwrap();
        assert!(x.exact && is_mcm(&x.cone));
    }

    #[test]
    fn approximation_of_m1_mod_x() {
        let m = m1();
        let x = parse_poly(m.ring().ring(), "x").unwrap();
        let ap = mcm_approx(&m, std::slice::from_ref(&x)).unwrap();
        assert!(ap.surjective && ap.kernel_finite_pd);
        assert_eq!(ap.depth, 1);
        let z = parse_poly(m.ring().ring(), "z").unwrap();
        assert!(matches!(mcm_approx(&m, &[z]), Err(ResolveError::RegularSequence(_))));
        let free = Module::free(m.ring().clone(), vec![0]);
        let ap = mcm_approx(&free, &[x]).unwrap();
        assert!(ap.surjective && ap.kernel_finite_pd);
    }
}

//! Filtrations `I^n F_{i-1} ∩ M_i` induced on the syzygy modules of a
//! minimal resolution, and the strong Artin–Rees exponent `h` with
//! `I^n F ∩ M_i = I^{n-h}(I^h F ∩ M_i)` for `n >= h`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotics::Degree;
use crate::blowup::{assoc_graded_on, BlowupError, GradedPresentation};
use crate::ci_ring::{CIRing, Ideal};
use crate::poly::{intersect, preimage, FreeSubmodule, ModOrder, Poly, Vector};
use crate::resolve::{minimal_resolution, FreeResolution, Module, ResolveError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArtinReesError {
    #[error("level {level} exceeds the resolution cutoff {cutoff}")]
    LevelOutOfRange { level: usize, cutoff: usize },
    #[error("level {level}: no exponent below {n_max} verified; enlarge the window")]
    WindowTooSmall { level: usize, n_max: usize },
    #[error(transparent)]
    Blowup(#[from] BlowupError),
    #[error(transparent)]
    Resolve(#[from] ResolveError),
}

/// `ℋ(i) = {I^n F_{i-1} ∩ M_i}` for `0 <= n <= n_max`.
#[derive(Clone, Debug)]
pub struct SyzygyFiltration {
    pub level: usize,
    /// `I^n F_{i-1} ∩ M_i + (f) F_{i-1}` for each `n`.
    pub pieces: Vec<FreeSubmodule>,
    /// `ℓ(N_n / N_{n+1})` for `n < n_max`.
    pub lengths: Vec<usize>,
    /// Least `n_1` with `N_{n+1} = I N_n` for `n_1 <= n < n_max`.
    pub stable_from: Option<usize>,
    /// `G_ℋ(M_i)` presented over `k[y]`.
    pub graded: Module,
    /// `ℓ(G_ℋ)_n + ℓ(G_I(M_{i-1}))_n = ℓ(G_I(F_{i-1}))_n` and the
    /// presentation matches the chain, for `n < n_max`.
    pub exact: bool,
    /// Regularity of `G_ℋ(M_i)`.
    pub reg: Degree,
}

fn at_positions(ring: &crate::poly::PolyRing, polys: &[Poly], rank: usize) -> Vec<Vector> {
    let mut out = Vec::new();
    for k in 0..rank {
        for g in polys {
            out.push(Vector::from_poly_at(ring, ModOrder::POT, g, k));
        }
    }
    out
}

/// `I^e U + (f) F`, from generators of `U`.
fn ideal_times(ideal: &Ideal, e: usize, u: &FreeSubmodule, rank: usize) -> FreeSubmodule {
    let ci = ideal.ring();
    let r = ci.ring();
    let mut gens = ci.relation_vectors(rank);
    if e == 0 {
        gens.extend(u.gens().iter().cloned());
    } else {
        let pg = ideal.power_gens(e);
        for v in u.gb() {
            for g in &pg {
                gens.push(ci.reduce_vector(&v.mul_poly(r, ModOrder::POT, g)));
            }
        }
    }
    FreeSubmodule::new(r.clone(), u.shifts().to_vec(), gens).unwrap()
}

fn equal_modules(a: &FreeSubmodule, b: &FreeSubmodule) -> bool {
    a.contains_module(b) && b.contains_module(a)
}

fn module_at(res: &FreeResolution, i: usize) -> Module {
    Module::new(res.ring().clone(), res.degrees[i].clone(), res.maps[i].clone()).unwrap()
}

/// The chain, its associated graded module and the exactness checks at
/// level `i >= 1` of a given minimal resolution.
pub fn filtration_of(res: &FreeResolution, ideal: &Arc<Ideal>, i: usize, n_max: usize) -> Result<SyzygyFiltration, ArtinReesError> {
    if i == 0 || i > res.cutoff() {
        return Err(ArtinReesError::LevelOutOfRange {
            level: i,
            cutoff: res.cutoff(),
        });
    }
    let ci = res.ring();
    let r = ci.ring();
    let shifts = res.degrees[i - 1].clone();
    let rank = shifts.len();
    let mut image_gens = res.maps[i - 1].clone();
    image_gens.extend(ci.relation_vectors(rank));
    let image = FreeSubmodule::new(r.clone(), shifts.clone(), image_gens).expect("columns fit the rank");
    let pieces: Vec<FreeSubmodule> = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let gens = if n == 0 {
                vec![Poly::constant(r, 1)]
            } else {
                ideal.power_gens(n)
            };
            let mut pg = at_positions(r, &gens, rank);
            pg.extend(ci.relation_vectors(rank));
            let power = FreeSubmodule::new(r.clone(), shifts.clone(), pg).unwrap();
            intersect(&power, &image)
        })
        .collect();
    let hs = |u: &FreeSubmodule| u.hilbert_series().expect("homogeneous");
    let lengths: Vec<usize> = (0..n_max)
        .map(|n| {
            hs(&pieces[n + 1])
                .add(&hs(&pieces[n]).negate())
                .total_length()
                .unwrap_or(0) as usize
        })
        .collect();
    let stable: Vec<bool> = (0..n_max)
        .map(|n| equal_modules(&pieces[n + 1], &ideal_times(ideal, 1, &pieces[n], rank)))
        .collect();
    let stable_from = (0..=n_max).find(|&n1| stable[n1..].iter().all(|&b| b));

    let free = Module::free(ci.clone(), shifts.clone());
    let quotient = module_at(res, i - 1);
    let g_free = assoc_graded_on(&free, ideal)?;
    let g_quot = assoc_graded_on(&quotient, ideal)?;
    let graded = kernel_presentation(&g_free, &g_quot)?;
    let gq = graded.quotient();
    let mut exact = true;
    for n in 0..n_max {
        let e = n as i32;
        let h = gq.dim(e);
        exact &= h + g_quot.dim(e) == g_free.dim(e) && h == lengths[n];
    }
    let reg = if graded.is_zero() {
        Degree::NegInf
    } else {
        let res = minimal_resolution(&graded, graded.ring().ring().nvars());
        res.graded_betti()
            .iter()
            .map(|&(i, d, _)| Degree::Finite(d as i64 - i as i64))
            .max()
            .unwrap_or(Degree::NegInf)
    };
    Ok(SyzygyFiltration {
        level: i,
        pieces,
        lengths,
        stable_from,
        graded,
        exact,
        reg,
    })
}

/// `ker(G_I(F) -> G_I(F/M))` over `k[y]`: the preimage of the relations of
/// the target under the degree-0 basis map, modulo those of the source.
fn kernel_presentation(g_free: &GradedPresentation, g_quot: &GradedPresentation) -> Result<Module, ArtinReesError> {
    let ky = g_free.ring.clone();
    let base = g_quot.base.ring().ring().clone();
    let target_q = crate::poly::GradedQuotient::new(g_quot.base.relation_module().with_gens(&at_positions(
        &base,
        g_quot.ideal.gens(),
        g_quot.base.rank(),
    )));
    let mut offsets = std::collections::HashMap::new();
    let mut idx = 0;
    for &(_, _, e) in &g_quot.generators {
        offsets.entry(e).or_insert(idx);
        idx += 1;
    }
    let images: Vec<Vector> = g_free
        .generators
        .iter()
        .map(|&(mono, pos, e)| {
            let v = Vector::from_terms(&base, ModOrder::POT, vec![crate::poly::Term { mono, pos: pos as u32, coef: 1 }]);
            let coords = target_q.coords(&v, e);
            let off = offsets.get(&e).copied().unwrap_or(0);
            let terms = coords
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(j, &c)| crate::poly::Term {
                    mono: crate::poly::Mono::one(),
                    pos: (off + j) as u32,
                    coef: c,
                })
                .collect();
            Vector::from_terms(&ky, ModOrder::POT, terms)
        })
        .collect();
    let n_free = g_free.rank();
    let n_quot = g_quot.rank();
    let kernel = if n_free == 0 {
        Vec::new()
    } else {
        preimage(&ky, &vec![0; n_quot], &images, &vec![0; n_free], &g_quot.relations)
    };
    let ring = CIRing::polynomial(ky.clone());
    let ambient = Module::new(ring, vec![0; n_free], g_free.relations.clone())?;
    let degrees: Vec<i32> = kernel.iter().map(|v| v.degree(&vec![0; n_free]).unwrap()).collect();
    Ok(Module::submodule_of(&ambient, &kernel, &degrees).minimize())
}

/// `I^n F ∩ M_i = I^{n-h}(I^h F ∩ M_i)` for each `n` in `[h, n_max]`, by
/// double inclusion; the right side is always contained in the left.
fn check_exponent(f: &SyzygyFiltration, ideal: &Ideal, h: usize) -> Vec<(usize, bool)> {
    let rank = f.pieces[0].rank();
    (h..f.pieces.len())
        .map(|n| {
            let rhs = ideal_times(ideal, n - h, &f.pieces[h], rank);
            assert!(f.pieces[n].contains_module(&rhs), "containment I^(n-h)(I^h F ∩ U) ⊆ I^n F ∩ U failed");
            (n, rhs.contains_module(&f.pieces[n]))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub exponent: usize,
    /// `(n, equality holds)` for `n` in `[exponent, n_max]`.
    pub verified: Vec<(usize, bool)>,
    pub reg: Degree,
    /// `exponent <= reg G_ℋ + 1`.
    pub within_reg_bound: bool,
    pub exact: bool,
    pub stable_from: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ARReport {
    pub levels: Vec<LevelReport>,
    pub h: usize,
    pub n_max: usize,
}

impl ARReport {
    pub fn verified(&self) -> bool {
        self.levels.iter().all(|l| l.verified.iter().all(|&(_, ok)| ok))
    }

    pub fn within_reg_bounds(&self) -> bool {
        self.levels.iter().all(|l| l.within_reg_bound)
    }
}

/// Least `h < n_max` making the equality hold on `[h, n_max]` at each level
/// `1 <= i <= i_max`, and their maximum.
pub fn strong_ar_exponent(m: &Module, ideal: &Arc<Ideal>, i_max: usize, n_max: usize) -> Result<ARReport, ArtinReesError> {
    let res = minimal_resolution(m, i_max);
    strong_ar_exponent_on(&res, ideal, i_max, n_max)
}

pub fn strong_ar_exponent_on(res: &FreeResolution, ideal: &Arc<Ideal>, i_max: usize, n_max: usize) -> Result<ARReport, ArtinReesError> {
    let levels = (1..=i_max)
        .into_par_iter()
        .map(|i| {
            let f = filtration_of(res, ideal, i, n_max)?;
            let exponent = (0..n_max)
                .find(|&h| check_exponent(&f, ideal, h).iter().all(|&(_, ok)| ok))
                .ok_or(ArtinReesError::WindowTooSmall { level: i, n_max })?;
            let verified = check_exponent(&f, ideal, exponent);
            let within_reg_bound = match f.reg {
                Degree::NegInf => exponent == 0,
                Degree::Finite(r) => exponent as i64 <= r + 1,
            };
            Ok(LevelReport {
                level: i,
                exponent,
                verified,
                reg: f.reg,
                within_reg_bound,
                exact: f.exact,
                stable_from: f.stable_from,
            })
        })
        .collect::<Result<Vec<_>, ArtinReesError>>()?;
    let h = levels.iter().map(|l| l.exponent).max().unwrap_or(0);
    Ok(ARReport { levels, h, n_max })
}

#[derive(Clone, Debug, Serialize)]
pub struct ARVerification {
    pub h: usize,
    /// `(level, n, equality holds)`.
    pub checks: Vec<(usize, usize, bool)>,
    pub holds: bool,
    /// The window `[h, n_max]` has no `n > h`.
    pub vacuous: bool,
}

/// Check a given exponent at every level `1 <= i <= i_max`.
pub fn verify_ar(m: &Module, ideal: &Arc<Ideal>, h: usize, i_max: usize, n_max: usize) -> Result<ARVerification, ArtinReesError> {
    let res = minimal_resolution(m, i_max);
    let mut checks = Vec::new();
    let vacuous = h >= n_max;
    if !vacuous {
        for i in 1..=i_max {
            let f = filtration_of(&res, ideal, i, n_max)?;
            for (n, ok) in check_exponent(&f, ideal, h) {
                checks.push((i, n, ok));
            }
        }
    }
    Ok(ARVerification {
        h,
        holds: checks.iter().all(|c| c.2),
        checks,
        vacuous,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, PolyRing};

    fn a1() -> Arc<CIRing> {
        let r = Arc::new(PolyRing::standard(101, &["x", "z"]).unwrap());
        CIRing::new(r.clone(), vec![parse_poly(&r, "z^2").unwrap()]).unwrap()
    }

    fn ideal(a: &Arc<CIRing>, gens: &[&str]) -> Arc<Ideal> {
        Ideal::new(a.clone(), gens.iter().map(|s| parse_poly(a.ring(), s).unwrap()).collect()).unwrap()
    }

    fn m1(a: &Arc<CIRing>) -> Module {
        Module::cyclic(a.clone(), &[parse_poly(a.ring(), "z").unwrap()]).unwrap()
    }

    #[test]
    fn chain_for_m1_and_parameter_ideal() {
        let a = a1();
        let j = ideal(&a, &["x"]);
        let res = minimal_resolution(&m1(&a), 2);
        let f = filtration_of(&res, &j, 1, 6).unwrap();
        // (x^n) ∩ (z) = (x^n z): each quotient is one-dimensional.
        assert_eq!(f.lengths, vec![1; 6]);
        assert_eq!(f.stable_from, Some(0));
        assert!(f.exact);
        let xz = Vector::from_poly_at(a.ring(), ModOrder::POT, &parse_poly(a.ring(), "x^3*z").unwrap(), 0);
        assert!(f.pieces[3].contains(&xz) && !f.pieces[4].contains(&xz));
        assert!(matches!(filtration_of(&res, &j, 5, 6), Err(ArtinReesError::LevelOutOfRange { .. })));
    }

    #[test]
    fn exponents_on_fixtures() {
        let a = a1();
        let j = ideal(&a, &["x"]);
        let m = ideal(&a, &["x", "z"]);
        let rep = strong_ar_exponent(&m1(&a), &j, 4, 6).unwrap();
        assert_eq!(rep.h, 0);
        assert!(rep.verified() && rep.within_reg_bounds());
        let rep = strong_ar_exponent(&m1(&a), &m, 4, 6).unwrap();
        assert_eq!(rep.h, 1);
        assert!(rep.verified() && rep.within_reg_bounds());
        assert!(rep.levels.iter().all(|l| l.exact));
        let below = verify_ar(&m1(&a), &m, rep.h - 1, 4, 6).unwrap();
        assert!(!below.holds);
        let free = Module::free(a.clone(), vec![0]);
        assert_eq!(strong_ar_exponent(&free, &m, 4, 6).unwrap().h, 0);
        let v = verify_ar(&m1(&a), &m, 6, 4, 6).unwrap();
        assert!(v.vacuous && v.holds);
    }
}

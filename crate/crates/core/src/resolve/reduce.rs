//! Lowering complexity by one: a generic linear combination `v` of the
//! Eisenbud operators gives `0 -> K_i -> M_{i+2} -> M_i -> 0` for large `i`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cone::stably_isomorphic;
use super::resolution::minimal_resolution;
use super::{Module, ModuleMap, ResolveError};
use crate::operators::{eisenbud_operators, variety_of_operators, OperatorSet, VarietyWindow};
use crate::poly::{Matrix, ModOrder, Vector};

const RETRIES: u64 = 40;

#[derive(Clone, Debug)]
pub struct ComplexityReduction {
    pub start: usize,
    pub seed: u64,
    pub seeds_tried: Vec<u64>,
    /// Coefficients of `v = Σ β_j t_j`.
    pub coefficients: Vec<u32>,
    /// `K_{start}`.
    pub kernel: Module,
    pub kernel_betti: Vec<usize>,
    pub expected_betti: Vec<usize>,
    pub original_complexity: usize,
    pub kernel_complexity: usize,
    /// `Ω¹(K_start)` stably isomorphic to `K_{start+1}`.
    pub syzygy_compatible: bool,
}

impl ComplexityReduction {
    pub fn betti_match(&self) -> bool {
        self.kernel_betti == self.expected_betti
    }
}

/// Columns of `v : F_{i+2} -> F_i`.
fn combined(ops: &OperatorSet, beta: &[u32], i: usize) -> Vec<Vector> {
    let ring = ops.res.ring();
    let r = ring.ring();
    let n = ops.res.degrees[i + 2].len();
    (0..n)
        .map(|l| {
            let mut acc = Vector::zero();
            for (j, &b) in beta.iter().enumerate() {
                if b != 0 {
                    acc = acc.add(r, ModOrder::POT, &ops.lifted(j, i)[l].scale(r, b));
                }
            }
            ring.reduce_vector(&acc)
        })
        .collect()
}

/// Whether `v ⊗ k : F_{i+2} ⊗ k -> F_i ⊗ k` is onto.
fn surjective_mod_m(ops: &OperatorSet, cols: &[Vector], i: usize) -> bool {
    let r = ops.res.ring().ring();
    let rows = ops.res.degrees[i].len();
    let mut m = Matrix::zeros(rows, cols.len());
    for (l, c) in cols.iter().enumerate() {
        for (k, p) in c.components(r, rows).iter().enumerate() {
            if p.degree() == Some(0) {
                m.set(k, l, p.constant_term());
            }
        }
    }
    m.rank(r.field()) == rows
}

fn syzygy_of(ops: &OperatorSet, i: usize) -> Module {
    let res = &ops.res;
    Module::new(res.ring().clone(), res.degrees[i].clone(), res.maps[i].clone()).unwrap()
}

fn kernel_at(ops: &OperatorSet, beta: &[u32], i: usize, shift: i32) -> Module {
    let map = ModuleMap::new(
        syzygy_of(ops, i + 2).twist(shift),
        syzygy_of(ops, i),
        combined(ops, beta, i),
    )
    .expect("operators are chain maps");
    map.kernel_module()
}

/// Find `v` surjective on `F_{i+2} -> F_i` for `start <= i <= cutoff - 2`
/// and return `K_start` with its checks.
pub fn reduce_complexity(m: &Module, window: VarietyWindow, seed: u64) -> Result<ComplexityReduction, ResolveError> {
    let ring = m.ring().clone();
    let degs: Vec<u32> = ring.relations().iter().map(|f| f.degree().unwrap()).collect();
    if degs.windows(2).any(|w| w[0] != w[1]) {
        return Err(ResolveError::UnequalDegrees { degrees: degs });
    }
    let cutoff = window.cutoff;
    let start = window.burn_in;
    if cutoff < start + 6 {
        return Err(ResolveError::CutoffTooSmall { have: cutoff, need: start + 6 });
    }
    let res = minimal_resolution(m, cutoff);
    let ops = eisenbud_operators(&res);
    let variety = variety_of_operators(&ops, window);
    let cx = variety.dim;
    if cx <= 1 {
        return Err(ResolveError::ComplexityTooLow(cx));
    }
    let p = ring.characteristic();
    let c = ring.codim();
    let mut tried = Vec::new();
    for attempt in 0..RETRIES {
        let s = seed.wrapping_add(attempt);
        tried.push(s);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let beta: Vec<u32> = (0..c).map(|_| rng.gen_range(0..p)).collect();
        if beta.iter().all(|&b| b == 0) {
            continue;
        }
        let ok = (start..=cutoff - 2).all(|i| surjective_mod_m(&ops, &combined(&ops, &beta, i), i));
        if !ok {
            continue;
        }
        let shift = degs[0] as i32;
        let kernel = kernel_at(&ops, &beta, start, shift);
        let next = kernel_at(&ops, &beta, start + 1, shift);
        let span = cutoff - start - 3;
        let b = res.betti();
        let expected: Vec<usize> = (0..=span).map(|j| b[start + 2 + j] - b[start + j]).collect();
        let kres = minimal_resolution(&kernel, span.max(window.burn_in + 4));
        let kernel_betti = kres.betti()[..=span].to_vec();
        let kops = eisenbud_operators(&kres);
        let kwin = VarietyWindow {
            cutoff: kres.cutoff(),
            ..window
        };
        let kernel_complexity = variety_of_operators(&kops, kwin).dim;
        let syzygy_compatible = stably_isomorphic(&super::syzygy(&kernel, 1), &next, 3);
        return Ok(ComplexityReduction {
            start,
            seed: s,
            seeds_tried: tried,
            coefficients: beta,
            kernel,
            kernel_betti,
            expected_betti: expected,
            original_complexity: cx,
            kernel_complexity,
            syzygy_compatible,
        });
    }
    Err(ResolveError::Genericity { seeds: tried })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ci_ring::CIRing;
    use crate::poly::{parse_poly, PolyRing};
    use std::sync::Arc;

    fn a2() -> Arc<CIRing> {
        let r = Arc::new(PolyRing::standard(101, &["x", "z1", "z2"]).unwrap());
        let f = vec![parse_poly(&r, "z1^2").unwrap(), parse_poly(&r, "z2^2").unwrap()];
        CIRing::new(r, f).unwrap()
    }

    #[test]
    fn residue_field_over_a2_drops_to_complexity_one() {
        let k = Module::residue_field(a2());
        let w = VarietyWindow { cutoff: 9, burn_in: 2, max_degree: 2 };
        let red = reduce_complexity(&k, w, 7).unwrap();
        assert_eq!(red.original_complexity, 2);
        assert_eq!(red.kernel_complexity, 1);
        assert!(red.betti_match(), "{:?} vs {:?}", red.kernel_betti, red.expected_betti);
        assert!(red.expected_betti.iter().all(|&b| b == 4));
        assert!(red.syzygy_compatible);
    }

    #[test]
    fn complexity_one_is_rejected() {
        let a = a2();
        let m2 = Module::cyclic(a.clone(), &[parse_poly(a.ring(), "z1").unwrap()]).unwrap();
        let w = VarietyWindow { cutoff: 8, burn_in: 2, max_degree: 2 };
        assert!(matches!(reduce_complexity(&m2, w, 1), Err(ResolveError::ComplexityTooLow(1))));
    }
}

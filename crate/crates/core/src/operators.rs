//! Eisenbud operators on a resolution, the graded module `Ext(M, N) ⊗ k`
//! over `S = k[t_1..t_c]`, support varieties and complexity.

use std::sync::Arc;

use rayon::prelude::*;

use crate::asymptotics::{fit_psi, Degree, FitError};
use crate::ci_ring::{CIRing, Ideal};
use crate::poly::{
    intersect, FreeSubmodule, GradedQuotient, Lifter, Matrix, ModOrder, Mono, Poly, PolyRing,
    RowSpace, Vector,
};
use crate::resolve::{minimal_resolution, FreeResolution, Module, ModuleMap, ResolveError};

/// `Σ_k coeffs[k] * cols[k]` over `P`.
pub(crate) fn combine(ring: &PolyRing, cols: &[Vector], coeffs: &[Poly]) -> Vector {
    let mut acc = Vector::zero();
    for (k, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(ring, ModOrder::POT, &cols[k].mul_poly(ring, ModOrder::POT, c));
        }
    }
    acc
}

/// Eisenbud operators `t_j : F_{i+2} -> F_i` with `∂̃² = Σ f_j t̃_j`.
#[derive(Clone, Debug)]
pub struct OperatorSet {
    pub res: FreeResolution,
    /// `lifted[j][i]`: columns of `t̃_j : F_{i+2} -> F_i` over `P`.
    lifted: Vec<Vec<Vec<Vector>>>,
}

pub fn eisenbud_operators(res: &FreeResolution) -> OperatorSet {
    let ring = res.ring().clone();
    let r = ring.ring().clone();
    let c = ring.codim();
    let fvecs: Vec<Vector> = ring
        .relations()
        .iter()
        .map(|g| Vector::from_poly_at(&r, ModOrder::POT, g, 0))
        .collect();
    let fdeg: Vec<i32> = ring
        .relations()
        .iter()
        .map(|g| g.degree().unwrap() as i32)
        .collect();
    let lifter = Lifter::new(r.clone(), &[0], &fvecs, &fdeg);
    let mut lifted = vec![Vec::new(); c];
    for i in 0..res.cutoff().saturating_sub(1) {
        let rows = res.degrees[i].len();
        let mid = res.degrees[i + 1].len();
        let upper = res.differential(i + 2);
        let lower = res.differential(i + 1);
        let cols: Vec<Vec<Vec<Poly>>> = upper
            .par_iter()
            .map(|col| {
                let w = combine(&r, lower, &col.components(&r, mid));
                let mut per_j = vec![vec![Poly::zero(); rows]; c];
                for (k, p) in w.components(&r, rows).iter().enumerate() {
                    if p.is_zero() {
                        continue;
                    }
                    let cof = lifter
                        .lift(&Vector::from_poly_at(&r, ModOrder::POT, p, 0))
                        .expect("square of a lifted differential lies in (f)");
                    for (j, q) in cof.components(&r, c).into_iter().enumerate() {
                        per_j[j][k] = q;
                    }
                }
                per_j
            })
            .collect();
        for (j, lj) in lifted.iter_mut().enumerate() {
            lj.push(
                cols.iter()
                    .map(|pj| Vector::from_polys(&r, ModOrder::POT, &pj[j]))
                    .collect(),
            );
        }
    }
    OperatorSet {
        res: res.clone(),
        lifted,
    }
}

impl OperatorSet {
    pub fn codim(&self) -> usize {
        self.lifted.len()
    }

    /// Highest `i` with `t_j : F_{i+2} -> F_i` available.
    pub fn top(&self) -> Option<usize> {
        self.lifted.first().and_then(|l| l.len().checked_sub(1))
    }

    pub fn lifted(&self, j: usize, i: usize) -> &[Vector] {
        &self.lifted[j][i]
    }

    /// `t_j : F_{i+2} -> F_i` over `A`, as rows-by-columns polynomial entries
    /// `[column][row]`.
    pub fn entries(&self, j: usize, i: usize) -> Vec<Vec<Poly>> {
        let ring = self.res.ring();
        let rows = self.res.degrees[i].len();
        self.lifted[j][i]
            .iter()
            .map(|c| {
                c.components(ring.ring(), rows)
                    .iter()
                    .map(|p| ring.reduce(p))
                    .collect()
            })
            .collect()
    }

    /// `∂̃_{i+1} ∂̃_{i+2} = Σ_j f_j t̃_j` exactly over `P`, for every `i`.
    pub fn lift_identity_holds(&self) -> bool {
        let ring = self.res.ring();
        let r = ring.ring();
        let Some(top) = self.top() else { return true };
        (0..=top).all(|i| {
            let mid = self.res.degrees[i + 1].len();
            self.res
                .differential(i + 2)
                .iter()
                .enumerate()
                .all(|(l, col)| {
                    let lhs = combine(r, self.res.differential(i + 1), &col.components(r, mid));
                    let mut rhs = Vector::zero();
                    for (j, f) in ring.relations().iter().enumerate() {
                        rhs = rhs.add(r, ModOrder::POT, &self.lifted[j][i][l].mul_poly(r, ModOrder::POT, f));
                    }
                    lhs == rhs
                })
        })
    }

    /// `∂ t_j = t_j ∂` over `A` wherever both sides are defined.
    pub fn commutes_with_differential(&self) -> bool {
        let ring = self.res.ring();
        let r = ring.ring();
        let Some(top) = self.top() else { return true };
        for j in 0..self.codim() {
            for i in 1..=top {
                // F_{i+2} -> F_{i-1} both ways; needs t at (i-1) on F_{i+1} -> F_{i-1}.
                let src_mid = self.res.degrees[i].len();
                let up_mid = self.res.degrees[i + 1].len();
                for (l, col) in self.lifted[j][i].iter().enumerate() {
                    let a = combine(r, self.res.differential(i), &col.components(r, src_mid));
                    let b = combine(
                        r,
                        &self.lifted[j][i - 1],
                        &self.res.differential(i + 2)[l].components(r, up_mid),
                    );
                    if !ring.reduce_vector(&a.sub(r, ModOrder::POT, &b)).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `Ext(M, k)` with the action of the `t_j`.
    pub fn ext_k_module(&self) -> ExtModule {
        let f = self.res.ring().ring().field();
        let pieces = self.res.betti();
        let mut actions = vec![Vec::new(); self.codim()];
        if let Some(top) = self.top() {
            for (j, aj) in actions.iter_mut().enumerate() {
                for i in 0..=top {
                    let ent = self.entries(j, i);
                    let mut m = Matrix::zeros(pieces[i + 2], pieces[i]);
                    for (a, col) in ent.iter().enumerate() {
                        for (b, p) in col.iter().enumerate() {
                            if p.degree() == Some(0) {
                                m.set(a, b, p.constant_term());
                            }
                        }
                    }
                    aj.push(m);
                }
            }
        }
        ExtModule {
            field: f,
            pieces,
            actions,
        }
    }

    /// `Ext(M, N) ⊗ k` for a finite-length `N`, as `Z / (B + 𝔪 Z)` with the
    /// induced action of the `t_j`.
    pub fn ext_module_with(&self, n: &GradedQuotient) -> ExtModule {
        let ring = self.res.ring();
        let r = ring.ring();
        let f = r.field();
        let (_, _, dn) = n.total_layout();
        let res = &self.res;
        let top = res.cutoff().saturating_sub(1);
        let mul = |p: &Poly| n.total_mul_matrix(p);
        // Hom(F_i, N) -> Hom(F_{i+1}, N)
        let hom_d = |i: usize| -> Matrix {
            let (bi, bn) = (res.degrees[i].len(), res.degrees[i + 1].len());
            let mut m = Matrix::zeros(bn * dn, bi * dn);
            for (l, col) in res.entries(i + 1).iter().enumerate() {
                for (k, p) in col.iter().enumerate() {
                    if !p.is_zero() {
                        m.put(l * dn, k * dn, &mul(p));
                    }
                }
            }
            m
        };
        let xs: Vec<Matrix> = (0..r.nvars()).map(|v| mul(&Poly::var(r, v))).collect();
        let mut quots = Vec::new();
        let mut prev_image: Option<Matrix> = None;
        for i in 0..=top {
            let bi = res.degrees[i].len();
            let d = hom_d(i);
            let z = d.kernel(f);
            let mut w = RowSpace::new(f, bi * dn);
            if let Some(b) = &prev_image {
                for c in 0..b.cols {
                    w.insert(b.column(c));
                }
            }
            for zv in &z {
                for x in &xs {
                    let mut out = vec![0u32; bi * dn];
                    for k in 0..bi {
                        let part = x.apply(f, &zv[k * dn..(k + 1) * dn]);
                        out[k * dn..(k + 1) * dn].copy_from_slice(&part);
                    }
                    w.insert(out);
                }
            }
            let wbasis: Vec<Vec<u32>> = w.rows().to_vec();
            let mut reps = Vec::new();
            let mut span = w.clone();
            for zv in &z {
                if span.insert(zv.clone()) {
                    reps.push(zv.clone());
                }
            }
            quots.push(QuotientSpace { reps, wbasis, ambient: bi * dn });
            prev_image = Some(d);
        }
        let pieces: Vec<usize> = quots.iter().map(|q| q.reps.len()).collect();
        let mut actions = vec![Vec::new(); self.codim()];
        for (j, aj) in actions.iter_mut().enumerate() {
            for i in 0..=top.saturating_sub(2) {
                if i + 2 > top || self.top().is_none_or(|t| i > t) {
                    break;
                }
                let (bi, b2) = (res.degrees[i].len(), res.degrees[i + 2].len());
                let mut t = Matrix::zeros(b2 * dn, bi * dn);
                for (a, col) in self.entries(j, i).iter().enumerate() {
                    for (b, p) in col.iter().enumerate() {
                        if !p.is_zero() {
                            t.put(a * dn, b * dn, &mul(p));
                        }
                    }
                }
                let mut m = Matrix::zeros(pieces[i + 2], pieces[i]);
                for (c, rep) in quots[i].reps.iter().enumerate() {
                    let img = t.apply(f, rep);
                    for (rrow, v) in quots[i + 2].coords(f, &img).into_iter().enumerate() {
                        m.set(rrow, c, v);
                    }
                }
                aj.push(m);
            }
        }
        ExtModule {
            field: f,
            pieces,
            actions,
        }
    }
}

struct QuotientSpace {
    reps: Vec<Vec<u32>>,
    wbasis: Vec<Vec<u32>>,
    ambient: usize,
}

impl QuotientSpace {
    fn coords(&self, f: crate::poly::Field, v: &[u32]) -> Vec<u32> {
        let mut cols = self.reps.clone();
        cols.extend(self.wbasis.iter().cloned());
        let m = Matrix::from_columns(self.ambient, &cols);
        let x = m.solve(f, v).expect("element lies in the cycle space");
        x[..self.reps.len()].to_vec()
    }
}

/// A graded module over `S = k[t_1..t_c]`, truncated: pieces in
/// cohomological degrees `0..pieces.len()` and `t_j : E_i -> E_{i+2}`.
#[derive(Clone, Debug)]
pub struct ExtModule {
    pub field: crate::poly::Field,
    pub pieces: Vec<usize>,
    /// `actions[j][i] : E_i -> E_{i+2}`.
    pub actions: Vec<Vec<Matrix>>,
}

impl ExtModule {
    pub fn codim(&self) -> usize {
        self.actions.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(|&p| p == 0)
    }

    fn action(&self, j: usize, i: usize) -> Option<&Matrix> {
        self.actions.get(j).and_then(|a| a.get(i))
    }

    /// `[t_j, t_l] = 0` wherever defined.
    pub fn actions_commute(&self) -> bool {
        let f = self.field;
        for j in 0..self.codim() {
            for l in j + 1..self.codim() {
                for i in 0.. {
                    let (Some(a1), Some(b2), Some(b1), Some(a2)) = (
                        self.action(j, i),
                        self.action(l, i + 2),
                        self.action(l, i),
                        self.action(j, i + 2),
                    ) else {
                        break;
                    };
                    if b2.mul(f, a1) != a2.mul(f, b1) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Least `g` such that every piece above `g` is spanned by images of the
    /// `t_j`; `None` when the answer is not visible below the cutoff.
    pub fn generation_degree(&self) -> Option<usize> {
        let f = self.field;
        let top = self.pieces.len().checked_sub(1)?;
        let mut g = 0;
        for i in 0..=top {
            let covered = if i < 2 {
                self.pieces[i] == 0
            } else {
                let mut span = RowSpace::new(f, self.pieces[i]);
                for j in 0..self.codim() {
                    if let Some(m) = self.action(j, i - 2) {
                        for c in 0..m.cols {
                            span.insert(m.column(c));
                        }
                    }
                }
                span.rank() == self.pieces[i]
            };
            if !covered {
                g = i;
            }
        }
        if g + 2 > top {
            None
        } else {
            Some(g)
        }
    }

    /// The operator `t^α` on `E_i`, or `None` outside the computed range.
    fn monomial_action(&self, alpha: &[u16], i: usize) -> Option<Matrix> {
        let f = self.field;
        let mut acc = Matrix::identity(*self.pieces.get(i)?);
        let mut at = i;
        for (j, &e) in alpha.iter().enumerate() {
            for _ in 0..e {
                acc = self.action(j, at)?.mul(f, &acc);
                at += 2;
            }
        }
        Some(acc)
    }

    /// Degree-`deg` elements of `S` killing `E_i` for all `i` in `lo..=hi`
    /// (with `i + 2 deg <= hi`).
    pub fn annihilator_in_degree(&self, s: &PolyRing, deg: u32, lo: usize, hi: usize) -> Vec<Poly> {
        let f = self.field;
        let monos = s.monomials_of_degree(deg);
        let mut rows: Vec<Vec<u32>> = Vec::new();
        let mut i = lo;
        while i + 2 * deg as usize <= hi {
            let mats: Vec<Matrix> = monos
                .iter()
                .map(|m| {
                    let alpha: Vec<u16> = (0..s.nvars()).map(|v| m.exp(v)).collect();
                    self.monomial_action(&alpha, i).expect("window inside computed range")
                })
                .collect();
            if let Some(m0) = mats.first() {
                for e in 0..m0.data.len() {
                    rows.push(mats.iter().map(|m| m.data[e]).collect());
                }
            }
            i += 1;
        }
        let mut sys = Matrix::zeros(rows.len(), monos.len());
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                sys.set(r, c, v);
            }
        }
        sys.kernel(f)
            .into_iter()
            .map(|coef| {
                let terms: Vec<(Mono, u32)> = monos.iter().copied().zip(coef).filter(|(_, c)| *c != 0).collect();
                Poly::from_terms(s, terms)
            })
            .collect()
    }

    /// Annihilator of the truncation to `lo..=hi`, generated in degrees up
    /// to `max_deg`; `(t_1..t_c)` when the truncation vanishes.
    pub fn annihilator(&self, s: &Arc<PolyRing>, lo: usize, hi: usize, max_deg: u32) -> Vec<Poly> {
        if self.pieces[lo..=hi].iter().all(|&p| p == 0) {
            return (0..s.nvars()).map(|v| Poly::var(s, v)).collect();
        }
        let top = (((hi - lo) / 2) as u32).min(max_deg);
        let mut gens = Vec::new();
        for d in 1..=top {
            gens.extend(self.annihilator_in_degree(s, d, lo, hi));
        }
        FreeSubmodule::ideal(s.clone(), &gens)
            .gb()
            .iter()
            .map(|v| v.component(s, 0))
            .collect()
    }
}

/// `k[t_1..t_c]`.
pub fn operator_ring(c: usize, p: u32) -> Arc<PolyRing> {
    let names: Vec<String> = (1..=c).map(|j| format!("t{}", j)).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    Arc::new(PolyRing::standard(p, &refs).expect("valid operator ring"))
}

/// A homogeneous ideal of `S` with the dimension of `S/J`.
#[derive(Clone, Debug)]
pub struct VarietyIdeal {
    pub ring: Arc<PolyRing>,
    pub gens: Vec<Poly>,
    pub dim: usize,
    /// Set when the two annihilator windows disagree.
    pub inconclusive: bool,
    pub other_window: Option<Vec<Poly>>,
    pub stabilization: Option<usize>,
}

impl VarietyIdeal {
    pub fn from_gens(ring: Arc<PolyRing>, gens: Vec<Poly>) -> VarietyIdeal {
        let sub = FreeSubmodule::ideal(ring.clone(), &gens);
        let dim = sub.hilbert_series().unwrap().dimension().unwrap_or(0);
        let gens = sub.gb().iter().map(|v| v.component(&ring, 0)).collect();
        VarietyIdeal {
            ring,
            gens,
            dim,
            inconclusive: false,
            other_window: None,
            stabilization: None,
        }
    }

    pub fn submodule(&self) -> FreeSubmodule {
        FreeSubmodule::ideal(self.ring.clone(), &self.gens)
    }

    pub fn fmt_gens(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.fmt(&self.ring)).collect()
    }

    pub fn same_ideal(&self, other: &VarietyIdeal) -> bool {
        self.submodule().same_as(&other.submodule())
    }

    pub fn same_radical(&self, other: &VarietyIdeal) -> bool {
        radical_contains(&self.ring, &self.gens, &other.gens)
            && radical_contains(&self.ring, &other.gens, &self.gens)
    }

    /// `V(self) ⊆ V(other)`, i.e. `other ⊆ rad(self)`.
    pub fn variety_within(&self, other: &VarietyIdeal) -> bool {
        radical_contains(&self.ring, &self.gens, &other.gens)
    }

    pub fn sum(&self, other: &VarietyIdeal) -> VarietyIdeal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        VarietyIdeal::from_gens(self.ring.clone(), g)
    }

    pub fn intersection(&self, other: &VarietyIdeal) -> VarietyIdeal {
        let c = intersect(&self.submodule(), &other.submodule());
        let gens = c.gb().iter().map(|v| v.component(&self.ring, 0)).collect();
        VarietyIdeal::from_gens(self.ring.clone(), gens)
    }
}

/// Whether every element of `elems` lies in the radical of `(gens)`, by
/// the Rabinowitsch trick.
pub fn radical_contains(s: &Arc<PolyRing>, gens: &[Poly], elems: &[Poly]) -> bool {
    let n = s.nvars();
    let mut names: Vec<String> = s.names().to_vec();
    names.push("w_rab".into());
    let mut weights = s.weights().to_vec();
    weights.push(1);
    let big = PolyRing::new(s.field(), names, weights, s.order()).expect("one more variable");
    let map: Vec<Option<usize>> = (0..n).map(Some).collect();
    let lifted: Vec<Poly> = gens.iter().map(|g| g.remap(s, &big, &map)).collect();
    let one = Poly::constant(&big, 1);
    let w = Poly::var(&big, n);
    let big = Arc::new(big);
    elems.iter().all(|e| {
        let e = e.remap(s, &big, &map);
        let mut g = lifted.clone();
        g.push(one.sub(&big, &w.mul(&big, &e)));
        let sub = FreeSubmodule::ideal(big.clone(), &g);
        sub.contains(&Vector::from_poly_at(&big, ModOrder::POT, &one, 0))
    })
}

/// Defaults for the double-window annihilator computation.
#[derive(Clone, Copy, Debug)]
pub struct VarietyWindow {
    pub cutoff: usize,
    pub burn_in: usize,
    pub max_degree: u32,
}

impl Default for VarietyWindow {
    fn default() -> Self {
        VarietyWindow {
            cutoff: 10,
            burn_in: 2,
            max_degree: 2,
        }
    }
}

fn variety_from_ext(ext: &ExtModule, s: &Arc<PolyRing>, w: VarietyWindow) -> VarietyIdeal {
    let top = ext.pieces.len() - 1;
    let (lo1, hi1) = (w.burn_in, top - 2);
    let (lo2, hi2) = (w.burn_in + 2, top);
    let j1 = VarietyIdeal::from_gens(s.clone(), ext.annihilator(s, lo1, hi1, w.max_degree));
    let j2 = VarietyIdeal::from_gens(s.clone(), ext.annihilator(s, lo2, hi2, w.max_degree));
    let mut out = j1.clone();
    if !j1.same_ideal(&j2) {
        out.inconclusive = true;
        out.other_window = Some(j2.gens);
    }
    out
}

/// `𝒱_A(M, N)`; `N = k` when absent.
pub fn support_variety(m: &Module, n: Option<&Module>, w: VarietyWindow) -> VarietyIdeal {
    let ring = m.ring();
    let s = operator_ring(ring.codim(), ring.characteristic());
    let res = minimal_resolution(m, w.cutoff);
    let ops = eisenbud_operators(&res);
    let ext = match n {
        None => ops.ext_k_module(),
        Some(n) => ops.ext_module_with(&n.quotient()),
    };
    variety_from_ext(&ext, &s, w)
}

/// `𝒱` computed from an existing operator set.
pub fn variety_of_operators(ops: &OperatorSet, w: VarietyWindow) -> VarietyIdeal {
    let ring = ops.res.ring();
    let s = operator_ring(ring.codim(), ring.characteristic());
    variety_from_ext(&ops.ext_k_module(), &s, w)
}

/// Complexity from the growth of Betti numbers: one plus the larger of
/// the polynomial degrees fitted to the even and odd tails.
pub fn betti_growth_complexity(betti: &[usize], burn_in: usize) -> Result<usize, FitError> {
    let tail = |parity: usize| -> Vec<i64> {
        (burn_in..betti.len())
            .filter(|i| i % 2 == parity)
            .map(|i| betti[i] as i64)
            .collect()
    };
    let de = fit_psi(&tail(0), 1)?;
    let dodd = fit_psi(&tail(1), 1)?;
    Ok(match de.max(dodd) {
        Degree::NegInf => 0,
        Degree::Finite(d) => d as usize + 1,
    })
}

#[derive(Clone, Debug)]
pub struct ComplexityReport {
    pub variety_dim: usize,
    pub betti_estimate: Option<usize>,
    pub betti: Vec<usize>,
    pub agree: bool,
    pub variety: VarietyIdeal,
}

pub fn complexity(m: &Module, w: VarietyWindow) -> ComplexityReport {
    let res = minimal_resolution(m, w.cutoff);
    let ops = eisenbud_operators(&res);
    let variety = variety_of_operators(&ops, w);
    let betti = res.betti();
    let est = betti_growth_complexity(&betti, w.burn_in).ok();
    ComplexityReport {
        variety_dim: variety.dim,
        betti_estimate: est,
        agree: est == Some(variety.dim) && !variety.inconclusive,
        betti,
        variety,
    }
}

/// `𝒱_A(A/I^n)` for `n = 1..=n_max` and where it stabilizes.
#[derive(Clone, Debug)]
pub struct IdealVarieties {
    pub per_power: Vec<VarietyIdeal>,
    pub stable: VarietyIdeal,
    /// Least `s` with `𝒱(I^n)` constant for `s <= n <= n_max`.
    pub index: usize,
    /// Set when the constant stretch is shorter than three powers.
    pub short_window: bool,
    pub total: VarietyIdeal,
}

pub fn ideal_varieties(i: &Arc<Ideal>, n_max: usize, w: VarietyWindow) -> IdealVarieties {
    let ring: &Arc<CIRing> = i.ring();
    let per_power: Vec<VarietyIdeal> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let m = Module::cyclic(ring.clone(), &i.power_gens(n)).expect("homogeneous powers");
            support_variety(&m, None, w)
        })
        .collect();
    let last = per_power.last().expect("n_max >= 1").clone();
    let mut index = n_max;
    while index > 1 && per_power[index - 2].same_radical(&last) {
        index -= 1;
    }
    let mut total = per_power[0].clone();
    for v in &per_power[1..index.max(1)] {
        total = total.intersection(v);
    }
    let mut stable = last;
    stable.stabilization = Some(index);
    IdealVarieties {
        short_window: n_max + 1 - index < 3,
        per_power,
        stable,
        index,
        total,
    }
}

/// `𝒱^∞_A(I)`.
pub fn stable_ideal_variety(i: &Arc<Ideal>, n_max: usize, w: VarietyWindow) -> VarietyIdeal {
    ideal_varieties(i, n_max, w).stable
}

/// `𝒱^tot_A(I)`: intersection of the annihilators up to the
/// stabilization index.
pub fn total_ideal_variety(i: &Arc<Ideal>, n_max: usize, w: VarietyWindow) -> VarietyIdeal {
    ideal_varieties(i, n_max, w).total
}

/// `𝒱_A(M)` next to `𝒱_{A/(x)}(M/xM)` for a linear form `x` regular on
/// `A` and on `M`; both live in the same `k[t_1..t_c]`.
pub fn variety_mod_linear(m: &Module, x: &Poly, w: VarietyWindow) -> Result<(VarietyIdeal, VarietyIdeal), ResolveError> {
    let ring = m.ring();
    if !ModuleMap::scalar(m, x).is_injective() {
        return Err(ResolveError::RegularSequence(format!("{} is a zero divisor on M", x.fmt(ring.ring()))));
    }
    let (b, section) = ring.quotient_by_linear(x)?;
    let rels = m.relations().iter().map(|v| section.apply_vector(v)).collect();
    let quotient = Module::new(b, m.degrees().to_vec(), rels)?;
    Ok((support_variety(m, None, w), support_variety(&quotient, None, w)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn ring(names: &[&str], f: &[&str]) -> Arc<CIRing> {
        let r = Arc::new(PolyRing::standard(101, names).unwrap());
        let f = f.iter().map(|s| parse_poly(&r, s).unwrap()).collect();
        CIRing::new(r, f).unwrap()
    }

    #[test]
    fn operator_on_m1_is_identity() {
        let a = ring(&["x", "z"], &["z^2"]);
        let m1 = Module::cyclic(a.clone(), &[parse_poly(a.ring(), "z").unwrap()]).unwrap();
        let ops = eisenbud_operators(&minimal_resolution(&m1, 6));
        assert!(ops.lift_identity_holds());
        assert!(ops.commutes_with_differential());
        for i in 0..=ops.top().unwrap() {
            assert_eq!(ops.entries(0, i)[0][0].fmt(a.ring()), "1");
        }
        let ext = ops.ext_k_module();
        assert_eq!(ext.pieces, vec![1; 7]);
        assert_eq!(ext.generation_degree(), Some(1));
    }

    #[test]
    fn residue_field_over_a2() {
        let a = ring(&["x", "z1", "z2"], &["z1^2", "z2^2"]);
        let k = Module::residue_field(a);
        let ops = eisenbud_operators(&minimal_resolution(&k, 6));
        assert!(ops.lift_identity_holds());
        assert!(ops.commutes_with_differential());
        let ext = ops.ext_k_module();
        assert!(ext.actions_commute());
        assert_eq!(ext.pieces, vec![1, 3, 5, 7, 9, 11, 13]);
    }

    #[test]
    fn varieties_of_fixture_modules() {
        let w = VarietyWindow { cutoff: 8, ..Default::default() };
        let a = ring(&["x", "z"], &["z^2"]);
        let m1 = Module::cyclic(a.clone(), &[parse_poly(a.ring(), "z").unwrap()]).unwrap();
        let v = support_variety(&m1, None, w);
        assert!(v.gens.is_empty() && v.dim == 1 && !v.inconclusive);
        let free = support_variety(&Module::free(a.clone(), vec![0]), None, w);
        assert_eq!(free.dim, 0);
        assert_eq!(free.fmt_gens(), vec!["t1"]);
        let a2 = ring(&["x", "z1", "z2"], &["z1^2", "z2^2"]);
        let m2 = Module::cyclic(a2.clone(), &[parse_poly(a2.ring(), "z1").unwrap()]).unwrap();
        let v = support_variety(&m2, None, w);
        assert_eq!(v.dim, 1);
        assert_eq!(v.fmt_gens(), vec!["t2"]);
    }

    #[test]
    fn variety_survives_reduction_mod_x() {
        let w = VarietyWindow { cutoff: 8, ..Default::default() };
        let a2 = ring(&["x", "z1", "z2"], &["z1^2", "z2^2"]);
        let x = parse_poly(a2.ring(), "x").unwrap();
        let m2 = Module::cyclic(a2.clone(), &[parse_poly(a2.ring(), "z1").unwrap()]).unwrap();
        let (before, after) = variety_mod_linear(&m2, &x, w).unwrap();
        assert!(before.same_radical(&after));
        assert_eq!(after.dim, 1);
        let z1 = parse_poly(a2.ring(), "z1").unwrap();
        assert!(variety_mod_linear(&m2, &z1, w).is_err());
    }

    #[test]
    fn radical_membership() {
        let s = operator_ring(2, 101);
        let t1 = parse_poly(&s, "t1").unwrap();
        let sq = parse_poly(&s, "t1^2").unwrap();
        assert!(radical_contains(&s, std::slice::from_ref(&sq), std::slice::from_ref(&t1)));
        assert!(!radical_contains(&s, &[sq], &[parse_poly(&s, "t2").unwrap()]));
    }

    #[test]
    fn betti_growth() {
        assert_eq!(betti_growth_complexity(&[1, 1, 1, 1, 1, 1, 1], 2).unwrap(), 1);
        assert_eq!(betti_growth_complexity(&[1, 3, 5, 7, 9, 11, 13, 15], 2).unwrap(), 2);
        assert_eq!(betti_growth_complexity(&[1, 2, 1, 0, 0, 0, 0, 0], 2).unwrap(), 0);
    }
}

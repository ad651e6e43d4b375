//! Associated graded modules `G_I(M)` by Rees elimination, their local
//! cohomology and regularity, Ratliff–Rush closures, superficial elements
//! and the regularity sweep over syzygy modules.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotics::{check_equivalences, AsymptoticsError, Degree, EquivalenceOptions};
use crate::ci_ring::{CIRing, CiError, Ideal};
use crate::operators::{ideal_varieties, support_variety};
use crate::poly::{
    colon, colon_ideal, eliminate_vars, preimage, FreeSubmodule, GradedQuotient, Matrix, ModOrder, Mono, Poly,
    PolyError, PolyRing, Term, Vector, MAX_VARS,
};
use crate::resolve::{minimal_resolution, Module, ResolveError};

/// Consecutive isomorphic transition maps that certify a directed limit.
const STABLE_STEPS: usize = 3;
/// Transition maps tried per degree before giving up.
const LIMIT_BUDGET: usize = 50;
/// Degrees scanned past the window start before giving up.
const DEGREE_BUDGET: i32 = 80;
/// Candidate systems of parameters tried for the Čech complex.
const SOP_TRIES: u64 = 8;
/// Candidates tried per degree by the superficial-element search.
const SUPERFICIAL_TRIES: u64 = 20;
/// Longest colon chain tried for a Ratliff–Rush closure.
const COLON_BUDGET: usize = 16;
/// Consecutive unchanged colons taken as stabilization; a single repeat
/// can be followed by growth.
const COLON_PLATEAU: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BlowupError {
    #[error("the ideal is not primary to the maximal ideal")]
    NotPrimary,
    #[error("{0} variables needed for the Rees ring, at most {MAX_VARS} supported")]
    TooManyVariables(usize),
    #[error("Hilbert function check failed in degree {degree}: {found} != {expected}")]
    HilbertMismatch { degree: usize, found: usize, expected: usize },
    #[error("inconclusive cohomology in degree {degree}: no stable limit after {steps} steps (dims {dims:?})")]
    InconclusiveCohomology { degree: i32, steps: usize, dims: Vec<usize> },
    #[error("no superficial element found; seeds tried: {seeds:?}")]
    Genericity { seeds: Vec<u64> },
    #[error("Ratliff-Rush chain for power {power} did not stabilize within {budget} colons")]
    ColonBudget { power: usize, budget: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Ring(#[from] CiError),
    #[error(transparent)]
    Resolve(#[from] ResolveError),
    #[error(transparent)]
    Asymptotics(#[from] AsymptoticsError),
}

fn remap_mono(m: &Mono, from: &PolyRing, to: &PolyRing, map: &[Option<usize>]) -> Mono {
    let mut exps = vec![0u16; to.nvars()];
    for i in 0..from.nvars() {
        let e = m.exp(i);
        if e > 0 {
            exps[map[i].expect("variable not present in target ring")] += e;
        }
    }
    to.mono(&exps)
}

fn remap_vector(v: &Vector, from: &PolyRing, to: &PolyRing, map: &[Option<usize>]) -> Vector {
    let terms = v
        .terms()
        .iter()
        .map(|t| Term {
            mono: remap_mono(&t.mono, from, to, map),
            pos: t.pos,
            coef: t.coef,
        })
        .collect();
    Vector::from_terms(to, ModOrder::POT, terms)
}

fn vectors_at(ring: &PolyRing, polys: &[Poly], rank: usize) -> Vec<Vector> {
    let mut out = Vec::new();
    for k in 0..rank {
        for g in polys {
            out.push(Vector::from_poly_at(ring, ModOrder::POT, g, k));
        }
    }
    out
}

/// `I^n M + relations + (f)` inside the free module covering `M`.
pub fn module_power(m: &Module, ideal: &Ideal, n: usize) -> FreeSubmodule {
    let r = m.ring().ring();
    let gens = if n == 0 {
        vec![Poly::constant(r, 1)]
    } else {
        ideal.power_gens(n)
    };
    m.relation_module().with_gens(&vectors_at(r, &gens, m.rank()))
}

/// `ℓ(M / I^n M)`.
pub fn power_colength(m: &Module, ideal: &Ideal, n: usize) -> Result<usize, BlowupError> {
    GradedQuotient::new(module_power(m, ideal, n))
        .length()
        .ok_or(BlowupError::NotPrimary)
}

/// `G_I(M)` as a module over `k[y_1..y_s]`, one variable per generator of
/// `I`, generated in degree 0 by a basis of `M/IM`.
#[derive(Debug)]
pub struct GradedPresentation {
    pub base: Module,
    pub ideal: Arc<Ideal>,
    pub ring: Arc<PolyRing>,
    /// Standard monomials of `M/IM` with their internal degrees.
    pub generators: Vec<(Mono, usize, i32)>,
    /// Relations among the generators, in `k[y]^N`.
    pub relations: Vec<Vector>,
    /// `dim G_n` checked against `ℓ(M/I^{n+1}M) - ℓ(M/I^nM)` for these `n`.
    pub checked_degrees: usize,
    quotient: GradedQuotient,
}

impl Clone for GradedPresentation {
    fn clone(&self) -> Self {
        GradedPresentation {
            base: self.base.clone(),
            ideal: self.ideal.clone(),
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            relations: self.relations.clone(),
            checked_degrees: self.checked_degrees,
            quotient: GradedQuotient::new(self.quotient.submodule().clone()),
        }
    }
}

/// Degrees of `G_I(M)` compared with direct colengths on construction.
pub const HILBERT_CHECK_DEGREES: usize = 6;

impl GradedPresentation {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn quotient(&self) -> &GradedQuotient {
        &self.quotient
    }

    pub fn dim(&self, n: i32) -> usize {
        self.quotient.dim(n)
    }

    pub fn is_zero(&self) -> bool {
        self.quotient.dim(0) == 0
    }

    /// `G` as a module over the polynomial ring `k[y]`.
    pub fn module(&self) -> Module {
        Module::new(
            CIRing::polynomial(self.ring.clone()),
            vec![0; self.rank()],
            self.relations.clone(),
        )
        .expect("Rees relations are homogeneous")
    }

    /// Regularity from the graded Betti numbers over `k[y]`.
    pub fn regularity(&self) -> Degree {
        if self.is_zero() {
            return Degree::NegInf;
        }
        let res = minimal_resolution(&self.module(), self.ring.nvars());
        betti_regularity(&res.graded_betti())
    }

    /// Regularity from the Betti numbers of `M` over the ambient polynomial
    /// ring; applies when `I` is the maximal ideal and `M` is generated in
    /// a single degree, where `G_I(M)` is `M` regraded.
    pub fn ambient_regularity(&self) -> Option<Degree> {
        let ci = self.base.ring();
        let maximal = Ideal::maximal(ci.clone());
        if !self.ideal.power(1).same_as(&maximal.power(1)) {
            return None;
        }
        let m = self.base.minimize();
        let start = *m.degrees().first()?;
        if m.degrees().iter().any(|&d| d != start) {
            return None;
        }
        let p = ci.ring().clone();
        let mut rels = m.relations().to_vec();
        rels.extend(ci.relation_vectors(m.rank()));
        let over_p = Module::new(CIRing::polynomial(p.clone()), m.degrees().to_vec(), rels).ok()?;
        let res = minimal_resolution(&over_p, p.nvars());
        Some(match betti_regularity(&res.graded_betti()) {
            Degree::Finite(r) => Degree::Finite(r - start as i64),
            d => d,
        })
    }
}

fn betti_regularity(graded: &[(usize, i32, usize)]) -> Degree {
    graded
        .iter()
        .filter(|&&(_, _, c)| c > 0)
        .map(|&(i, d, _)| Degree::Finite(d as i64 - i as i64))
        .max()
        .unwrap_or(Degree::NegInf)
}

/// `G_I(M) = R(M)/I R(M)`: the Rees relations are found by eliminating `u`
/// from `(relations, f, y_j - g_j u)`, then those involving only `y` and the
/// basis of `M/IM` are found by eliminating the base variables.
pub fn assoc_graded(m: &Module, ideal: &Arc<Ideal>) -> Result<GradedPresentation, BlowupError> {
    assoc_graded_on(&m.minimize(), ideal)
}

/// [`assoc_graded`] on the given presentation, without minimizing it first,
/// so that the generators are standard monomials of this presentation.
pub fn assoc_graded_on(m: &Module, ideal: &Arc<Ideal>) -> Result<GradedPresentation, BlowupError> {
    if !ideal.is_m_primary() {
        return Err(BlowupError::NotPrimary);
    }
    let ci = m.ring();
    let p = ci.ring();
    let m = m.clone();
    let r = m.rank();
    let nv = p.nvars();
    let gens = ideal.gens().to_vec();
    let s = gens.len();
    if nv + s + 1 > MAX_VARS {
        return Err(BlowupError::TooManyVariables(nv + s + 1));
    }
    let field = p.field();
    let mut names = p.names().to_vec();
    let mut weights = p.weights().to_vec();
    for (j, g) in gens.iter().enumerate() {
        names.push(format!("__rees_y{}", j + 1));
        weights.push(g.degree().unwrap() + 1);
    }
    names.push("__rees_u".into());
    weights.push(1);
    let big = PolyRing::new(field, names, weights, p.order())?;
    let embed: Vec<Option<usize>> = (0..nv).map(Some).collect();
    let lift = |v: &Vector| remap_vector(v, p, &big, &embed);
    let lift_poly = |g: &Poly| Poly::from_terms(&big, g.terms().iter().map(|(mo, c)| (remap_mono(mo, p, &big, &embed), *c)).collect());
    let u = nv + s;
    let shifts = m.degrees().to_vec();

    let mut rees_gens: Vec<Vector> = m.relations().iter().map(&lift).collect();
    rees_gens.extend(ci.relation_vectors(r).iter().map(&lift));
    let ug: Vec<Poly> = gens
        .iter()
        .map(|g| lift_poly(g).mul(&big, &Poly::var(&big, u)))
        .collect();
    for k in 0..r {
        for j in 0..s {
            let t = Poly::var(&big, nv + j).sub(&big, &ug[j]);
            rees_gens.push(Vector::from_poly_at(&big, ModOrder::POT, &t, k));
        }
    }
    let rees = eliminate_vars(&big, &shifts, 1 << u, &rees_gens);

    let base_quotient = GradedQuotient::new(m.relation_module().with_gens(&vectors_at(p, &gens, r)));
    let mut generators = Vec::new();
    if let Some((lo, hi)) = base_quotient.degree_range() {
        for e in lo..=hi {
            for &(mono, pos) in &base_quotient.piece(e).basis {
                generators.push((mono, pos, e));
            }
        }
    }
    let n_gen = generators.len();
    let images: Vec<Vector> = generators
        .iter()
        .map(|&(mono, pos, _)| {
            lift(&Vector::from_terms(p, ModOrder::POT, vec![Term { mono, pos: pos as u32, coef: 1 }]))
        })
        .collect();
    let src: Vec<i32> = generators.iter().map(|g| g.2).collect();
    let mut sub = rees;
    sub.extend(vectors_at(&big, &gens.iter().map(&lift_poly).collect::<Vec<_>>(), r));
    let pre = if n_gen == 0 {
        Vec::new()
    } else {
        preimage(&big, &shifts, &images, &src, &sub)
    };
    let x_mask = (1u32 << nv) - 1;
    let kept = if pre.is_empty() {
        Vec::new()
    } else {
        eliminate_vars(&big, &src, x_mask, &pre)
    };

    let ky_names: Vec<String> = (1..=s).map(|j| format!("y{}", j)).collect();
    let ky = Arc::new(PolyRing::new(field, ky_names, vec![1; s], p.order())?);
    let to_ky: Vec<Option<usize>> = (0..=u).map(|i| (nv..u).contains(&i).then(|| i - nv)).collect();
    let relations: Vec<Vector> = kept.iter().map(|v| remap_vector(v, &big, &ky, &to_ky)).collect();
    let sub = FreeSubmodule::new(ky.clone(), vec![0; n_gen], relations.clone())?;
    let g = GradedPresentation {
        base: m,
        ideal: ideal.clone(),
        ring: ky,
        generators,
        relations,
        checked_degrees: HILBERT_CHECK_DEGREES,
        quotient: GradedQuotient::new(sub),
    };
    let mut prev = 0;
    for n in 0..=HILBERT_CHECK_DEGREES {
        let next = power_colength(&g.base, ideal, n + 1)?;
        let expected = next - prev;
        let found = g.dim(n as i32);
        if found != expected {
            return Err(BlowupError::HilbertMismatch { degree: n, found, expected });
        }
        prev = next;
    }
    Ok(g)
}

/// Ends of local cohomology and the regularity they determine.
#[derive(Clone, Debug, Serialize)]
pub struct RegReport {
    /// `a_i = end H^i(G)` for `0 <= i <= s`.
    pub ends: Vec<Degree>,
    pub reg: Degree,
    /// Scanned degrees, inclusive.
    pub window: (i32, i32),
    /// `dim H^i(G)_n` for each scanned `n`.
    pub dims: Vec<(i32, Vec<usize>)>,
    /// Vanishing degrees observed past the last nonzero one.
    pub margin: usize,
}

impl RegReport {
    pub fn to_csv(&self) -> String {
        let s = self.ends.len();
        let mut out = String::from("n");
        for i in 0..s {
            out.push_str(&format!(",H{}", i));
        }
        out.push('\n');
        for (n, d) in &self.dims {
            out.push_str(&n.to_string());
            for v in d {
                out.push_str(&format!(",{}", v));
            }
            out.push('\n');
        }
        out
    }
}

fn subsets_of_size(s: usize, p: usize) -> Vec<u32> {
    (0u32..1 << s).filter(|m| m.count_ones() as usize == p).collect()
}

/// Stable Koszul (Čech) complexes on linear forms `l_1..l_s` of `k[y]`
/// in one internal degree.
struct Cech<'a> {
    g: &'a GradedQuotient,
    ring: &'a PolyRing,
    forms: Vec<Poly>,
    s: usize,
    subsets: Vec<Vec<u32>>,
    muls: Mutex<HashMap<(u32, u32, i32), Arc<Matrix>>>,
}

struct Level {
    /// Kernel bases of `d^p`.
    cycles: Vec<Vec<Vec<u32>>>,
    /// Column spans of `d^{p-1}`.
    boundaries: Vec<Matrix>,
    ranks: Vec<usize>,
    dims: Vec<usize>,
}

impl<'a> Cech<'a> {
    fn new(g: &'a GradedQuotient, forms: Vec<Poly>) -> Self {
        let s = forms.len();
        Cech {
            g,
            ring: g.ring(),
            forms,
            s,
            subsets: (0..=s).map(|p| subsets_of_size(s, p)).collect(),
            muls: Mutex::new(HashMap::new()),
        }
    }

    /// Multiplication by `Π_{j ∈ set} l_j^power` from degree `e`.
    fn mul(&self, set: u32, power: u32, e: i32) -> Arc<Matrix> {
        let key = (set, power, e);
        if let Some(m) = self.muls.lock().unwrap().get(&key) {
            return m.clone();
        }
        // Products are composed from cached single-form maps; dense powers
        // of generic forms are far costlier to reduce directly.
        let f = self.ring.field();
        let m = if set == 0 || power == 0 {
            Arc::new(Matrix::identity(self.g.dim(e)))
        } else if set.count_ones() == 1 {
            let j = set.trailing_zeros() as usize;
            if power == 1 {
                Arc::new(self.g.mul_matrix(&self.forms[j], e))
            } else {
                let last = e + power as i32 - 1;
                Arc::new(self.mul(set, 1, last).mul(f, &self.mul(set, power - 1, e)))
            }
        } else {
            let low = set & set.wrapping_neg();
            let rest = self.mul(set ^ low, power, e);
            let shift = (set ^ low).count_ones() as i32 * power as i32;
            Arc::new(self.mul(low, power, e + shift).mul(f, &rest))
        };
        self.muls.lock().unwrap().insert(key, m.clone());
        m
    }

    fn degree_of(&self, n: i32, k: u32, p: usize) -> i32 {
        n + (k as i32) * (p as i32)
    }

    fn component_dim(&self, n: i32, k: u32, p: usize) -> usize {
        let e = self.degree_of(n, k, p);
        if e < 0 {
            0
        } else {
            self.g.dim(e)
        }
    }

    fn differential(&self, n: i32, k: u32, p: usize) -> Matrix {
        let src_dim = self.component_dim(n, k, p);
        let dst_dim = self.component_dim(n, k, p + 1);
        let src = &self.subsets[p];
        let dst = &self.subsets[p + 1];
        let mut d = Matrix::zeros(dst.len() * dst_dim, src.len() * src_dim);
        if src_dim == 0 || dst_dim == 0 {
            return d;
        }
        let f = self.ring.field();
        let e = self.degree_of(n, k, p);
        for (a, &set) in src.iter().enumerate() {
            for j in 0..self.s {
                if set & (1 << j) != 0 {
                    continue;
                }
                let b = dst.binary_search(&(set | 1 << j)).unwrap();
                let below = (set & ((1 << j) - 1)).count_ones();
                let mut block = (*self.mul(1 << j, k, e)).clone();
                if below % 2 == 1 {
                    block = block.scale(f, f.neg(1));
                }
                d.put(b * dst_dim, a * src_dim, &block);
            }
        }
        d
    }

    fn transition(&self, n: i32, k: u32, p: usize) -> Matrix {
        let src_dim = self.component_dim(n, k, p);
        let dst_dim = self.component_dim(n, k + 1, p);
        let sets = &self.subsets[p];
        let mut t = Matrix::zeros(sets.len() * dst_dim, sets.len() * src_dim);
        if src_dim == 0 || dst_dim == 0 {
            return t;
        }
        let e = self.degree_of(n, k, p);
        for (a, &set) in sets.iter().enumerate() {
            t.put(a * dst_dim, a * src_dim, &self.mul(set, 1, e));
        }
        t
    }

    fn level(&self, n: i32, k: u32) -> Level {
        let f = self.ring.field();
        let diffs: Vec<Matrix> = (0..self.s).map(|p| self.differential(n, k, p)).collect();
        let total = |p: usize| self.subsets[p].len() * self.component_dim(n, k, p);
        let mut cycles = Vec::new();
        let mut boundaries = Vec::new();
        let mut ranks = Vec::new();
        let mut dims = Vec::new();
        for p in 0..=self.s {
            let z = if p < self.s {
                diffs[p].kernel(f)
            } else {
                (0..total(p))
                    .map(|i| {
                        let mut v = vec![0; total(p)];
                        v[i] = 1;
                        v
                    })
                    .collect()
            };
            let b = if p == 0 { Matrix::zeros(total(0), 0) } else { diffs[p - 1].clone() };
            let rb = b.rank(f);
            dims.push(z.len() - rb);
            cycles.push(z);
            ranks.push(rb);
            boundaries.push(b);
        }
        Level { cycles, boundaries, ranks, dims }
    }

    /// Rank of the map `H^p(level k) -> H^p(level k+1)`.
    fn induced_rank(&self, n: i32, k: u32, p: usize, here: &Level, next: &Level) -> usize {
        let f = self.ring.field();
        let t = self.transition(n, k, p);
        let rows = t.rows;
        let mut cols: Vec<Vec<u32>> = here.cycles[p].iter().map(|z| t.apply(f, z)).collect();
        let b = &next.boundaries[p];
        cols.extend((0..b.cols).map(|c| b.column(c)));
        Matrix::from_columns(rows, &cols).rank(f) - next.ranks[p]
    }

    /// `dim H^p(G)_n` for every `p`, as a directed limit over `k`.
    fn cohomology(&self, n: i32) -> Result<Vec<usize>, BlowupError> {
        let k0 = if n >= 0 { 1 } else { (1 - n) as u32 };
        let mut here = self.level(n, k0);
        let mut streak = vec![0usize; self.s + 1];
        for step in 0..LIMIT_BUDGET {
            let k = k0 + step as u32;
            let next = self.level(n, k + 1);
            for p in 0..=self.s {
                let iso = here.dims[p] == next.dims[p] && self.induced_rank(n, k, p, &here, &next) == here.dims[p];
                streak[p] = if iso { streak[p] + 1 } else { 0 };
            }
            if streak.iter().all(|&c| c >= STABLE_STEPS) {
                return Ok(next.dims);
            }
            here = next;
        }
        Err(BlowupError::InconclusiveCohomology {
            degree: n,
            steps: LIMIT_BUDGET,
            dims: here.dims,
        })
    }
}

/// Linear forms of `k[y]` generating `(y_1..y_s)` up to radical on `G`:
/// the variables when there are at most `dim G` of them, otherwise `dim G`
/// fixed pseudo-random forms with `G/(l)G` of finite length.
fn parameter_forms(g: &GradedPresentation) -> Result<Vec<Poly>, BlowupError> {
    let ring = &g.ring;
    let vars: Vec<Poly> = (0..ring.nvars()).map(|j| Poly::var(ring, j)).collect();
    let dim = g.quotient().hilbert_series()?.dimension().unwrap_or(0);
    if vars.len() <= dim.max(1) {
        return Ok(vars);
    }
    let p = ring.field().p();
    let rank = g.rank();
    for attempt in 0..SOP_TRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(attempt);
        let forms: Vec<Poly> = (0..dim)
            .map(|_| {
                let terms = (0..ring.nvars()).map(|j| (ring.var(j), rng.gen_range(1..p))).collect();
                Poly::from_terms(ring, terms)
            })
            .collect();
        let mut gens = g.relations.clone();
        for l in &forms {
            gens.extend((0..rank).map(|i| Vector::from_poly_at(ring, ModOrder::POT, l, i)));
        }
        let shifts = g.quotient().shifts().to_vec();
        let cut = FreeSubmodule::new(ring.clone(), shifts, gens)?;
        if cut.hilbert_series()?.dimension().unwrap_or(0) == 0 {
            return Ok(forms);
        }
    }
    Ok(vars)
}

/// Local cohomology of `G` with respect to `G_+`, degree by degree, from
/// directed limits of stable Koszul complexes on a system of parameters.
/// Degrees are scanned upward from `-(s + 1)` until `margin` consecutive
/// degrees vanish past every nonzero one and past the generators.
pub fn local_cohomology_ends(g: &GradedPresentation, margin: usize) -> Result<RegReport, BlowupError> {
    let cech = Cech::new(g.quotient(), parameter_forms(g)?);
    let s = cech.s;
    let lo = -(s as i32 + 1);
    let mut dims: Vec<(i32, Vec<usize>)> = Vec::new();
    let mut last_nonzero: Option<i32> = None;
    let batch = margin.max(1) as i32 + 2;
    let mut next = lo;
    loop {
        let degrees: Vec<i32> = (next..next + batch).collect();
        let results: Vec<Result<Vec<usize>, BlowupError>> = degrees.par_iter().map(|&n| cech.cohomology(n)).collect();
        for (n, res) in degrees.iter().zip(results) {
            let d = res?;
            if d.iter().any(|&v| v > 0) {
                last_nonzero = Some(*n);
            }
            dims.push((*n, d));
        }
        next += batch;
        let top = next - 1;
        let floor = last_nonzero.unwrap_or(lo).max(0);
        if top - floor >= margin as i32 {
            break;
        }
        if next - lo > DEGREE_BUDGET {
            return Err(BlowupError::InconclusiveCohomology {
                degree: top,
                steps: LIMIT_BUDGET,
                dims: dims.last().map(|d| d.1.clone()).unwrap_or_default(),
            });
        }
    }
    let ends: Vec<Degree> = (0..=s)
        .map(|i| {
            dims.iter()
                .filter(|(_, d)| d[i] > 0)
                .map(|(n, _)| Degree::Finite(*n as i64))
                .max()
                .unwrap_or(Degree::NegInf)
        })
        .collect();
    let reg = ends
        .iter()
        .enumerate()
        .map(|(i, a)| match a {
            Degree::Finite(v) => Degree::Finite(v + i as i64),
            Degree::NegInf => Degree::NegInf,
        })
        .max()
        .unwrap_or(Degree::NegInf);
    let window = (lo, dims.last().map_or(lo, |d| d.0));
    let observed = (window.1 - last_nonzero.unwrap_or(lo - 1)).max(0) as usize;
    Ok(RegReport {
        ends,
        reg,
        window,
        dims,
        margin: observed.min(margin.max(observed)),
    })
}

/// One level of the Ratliff–Rush filtration.
#[derive(Clone, Debug)]
pub struct ClosureLevel {
    pub power: usize,
    /// `(I^{power+k}M : I^k)` at the stable `k`, including the relations.
    pub closure: FreeSubmodule,
    /// Least `k` from which the colon chain stayed constant.
    pub stabilization: usize,
    /// `ℓ(closure / I^power M)`.
    pub defect: usize,
}

#[derive(Clone, Debug)]
pub struct RatliffRushChain {
    /// `levels[n]` describes the closure of `I^{n+1} M`.
    pub levels: Vec<ClosureLevel>,
    /// Largest `n` with a nontrivial closure of `I^{n+1}M`.
    pub end_h0: Degree,
}

impl RatliffRushChain {
    pub fn defects(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.defect).collect()
    }
}

/// Colons `(I^{n+k}M : I^k)` with memoization on `(n, k)`.
struct ColonChain<'a> {
    m: &'a Module,
    ideal: &'a Ideal,
    memo: HashMap<(usize, usize), FreeSubmodule>,
}

impl ColonChain<'_> {
    fn get(&mut self, n: usize, k: usize) -> FreeSubmodule {
        if let Some(c) = self.memo.get(&(n, k)) {
            return c.clone();
        }
        let c = if k == 0 {
            module_power(self.m, self.ideal, n)
        } else {
            let inner = self.get(n + 1, k - 1);
            colon_ideal(&inner, self.ideal.gens())
        };
        self.memo.insert((n, k), c.clone());
        c
    }
}

fn colength_of(sub: &FreeSubmodule) -> Result<usize, BlowupError> {
    GradedQuotient::new(sub.clone()).length().ok_or(BlowupError::NotPrimary)
}

/// Ratliff–Rush closures of `I^n M` for `1 <= n <= n_max + 1`.
pub fn ratliff_rush(m: &Module, ideal: &Ideal, n_max: usize) -> Result<RatliffRushChain, BlowupError> {
    if !ideal.is_m_primary() {
        return Err(BlowupError::NotPrimary);
    }
    let mut chain = ColonChain {
        m,
        ideal,
        memo: HashMap::new(),
    };
    let mut levels = Vec::new();
    for n in 0..=n_max {
        let power = n + 1;
        let base = chain.get(power, 0);
        let mut prev = base.clone();
        let mut since = 0;
        let mut streak = 0;
        let mut found = None;
        for k in 1..=COLON_BUDGET {
            let cur = chain.get(power, k);
            if cur.same_as(&prev) {
                streak += 1;
                if streak == COLON_PLATEAU {
                    found = Some((since, prev));
                    break;
                }
            } else {
                streak = 0;
                since = k;
            }
            prev = cur;
        }
        let (stabilization, closure) = found.ok_or(BlowupError::ColonBudget {
            power,
            budget: COLON_BUDGET,
        })?;
        let defect = colength_of(&base)? - colength_of(&closure)?;
        levels.push(ClosureLevel {
            power,
            closure,
            stabilization,
            defect,
        });
    }
    let end_h0 = levels
        .iter()
        .enumerate()
        .filter(|(_, l)| l.defect > 0)
        .map(|(n, _)| Degree::Finite(n as i64))
        .max()
        .unwrap_or(Degree::NegInf);
    Ok(RatliffRushChain { levels, end_h0 })
}

/// `(I^{n+1}M : x) = I^n M` for every `n` in `window`; the first failing
/// `n`, if any.
pub fn superficial_failure(m: &Module, ideal: &Ideal, x: &Poly, window: (usize, usize)) -> Option<usize> {
    (window.0..=window.1).find(|&n| {
        let upper = colon(&module_power(m, ideal, n + 1), x);
        !upper.same_as(&module_power(m, ideal, n))
    })
}

/// The window `(s, s + 2)` with `s` past the last non-closed power of
/// every module; below `s` the colon equality fails for every `x`.
pub fn superficial_window(ideal: &Ideal, modules: &[Module], n_max: usize) -> Result<(usize, usize), BlowupError> {
    let mut start = 1;
    for m in modules {
        if let Degree::Finite(e) = ratliff_rush(m, ideal, n_max)?.end_h0 {
            start = start.max(e as usize + 2);
        }
    }
    Ok((start, start + 2))
}

#[derive(Clone, Debug, Serialize)]
pub struct SuperficialAttempt {
    pub seed: u64,
    pub candidate: String,
    /// First `n` where the colon check failed, and for which module.
    pub failed: Option<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct Superficial {
    pub element: Poly,
    pub degree: u32,
    pub window: (usize, usize),
    pub transcript: Vec<SuperficialAttempt>,
}

/// Spanning set of the homogeneous component `I_δ`.
fn ideal_component(ideal: &Ideal, delta: u32) -> Vec<Poly> {
    let ci = ideal.ring();
    let r = ci.ring();
    let mut out = Vec::new();
    for g in ideal.gens() {
        let dg = g.degree().unwrap();
        if dg > delta {
            continue;
        }
        for mono in r.monomials_of_degree(delta - dg) {
            let p = ci.reduce(&g.mul_term(r, &mono, 1));
            if !p.is_zero() {
                out.push(p);
            }
        }
    }
    out
}

/// Random elements of `I` of increasing degree, accepted when
/// `(I^{n+1}M : x) = I^n M` for each module and each `n` in `window`.
pub fn find_superficial(
    ideal: &Ideal,
    modules: &[Module],
    window: (usize, usize),
    seed: u64,
) -> Result<Superficial, BlowupError> {
    let ci = ideal.ring();
    let r = ci.ring();
    let p = ci.characteristic();
    let mut degrees: Vec<u32> = ideal.gens().iter().map(|g| g.degree().unwrap()).collect();
    degrees.sort();
    degrees.dedup();
    let mut transcript = Vec::new();
    let mut seeds = Vec::new();
    let mut attempt = 0u64;
    for &delta in &degrees {
        let span = ideal_component(ideal, delta);
        if span.is_empty() {
            continue;
        }
        for _ in 0..SUPERFICIAL_TRIES {
            let s = seed.wrapping_add(attempt);
            attempt += 1;
            seeds.push(s);
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let mut x = Poly::zero();
            for g in &span {
                x = x.add(r, &g.scale(r, rng.gen_range(0..p)));
            }
            if x.is_zero() {
                continue;
            }
            let failed = modules
                .iter()
                .enumerate()
                .find_map(|(j, m)| superficial_failure(m, ideal, &x, window).map(|n| (n, j)));
            transcript.push(SuperficialAttempt {
                seed: s,
                candidate: x.fmt(r),
                failed,
            });
            if failed.is_none() {
                return Ok(Superficial {
                    element: x,
                    degree: delta,
                    window,
                    transcript,
                });
            }
        }
    }
    Err(BlowupError::Genericity { seeds })
}

/// The bound `end H^0(L^I(M)) <= m(t+2) - 1` with its ingredients.
#[derive(Clone, Debug, Serialize)]
pub struct PowerBound {
    pub skipped: Option<String>,
    /// `end H^0(L^I(M/xM))`.
    pub b: Degree,
    pub power: usize,
    /// `end H^0(L^{I^m}(M))`.
    pub t: Degree,
    pub lhs: Degree,
    pub rhs: i64,
    pub holds: bool,
}

/// Check the power-ideal bound for `end H^0` with a superficial `x`.
pub fn end_h0_via_power(m: &Module, ideal: &Ideal, x: &Poly, n_max: usize) -> Result<PowerBound, BlowupError> {
    let ci = m.ring();
    if ci.dim() < 2 {
        return Ok(PowerBound {
            skipped: Some(format!("dimension {} < 2", ci.dim())),
            b: Degree::NegInf,
            power: 0,
            t: Degree::NegInf,
            lhs: Degree::NegInf,
            rhs: 0,
            holds: true,
        });
    }
    let n = m.mod_elements(std::slice::from_ref(x));
    let b = ratliff_rush(&n, ideal, n_max)?.end_h0;
    let power = match b {
        Degree::Finite(v) => (v + 1).max(2) as usize,
        Degree::NegInf => 2,
    };
    let ideal_m = Ideal::new(ci.clone(), ideal.power_gens(power))?;
    let t = ratliff_rush(m, &ideal_m, (n_max / power).max(2))?.end_h0;
    let lhs = ratliff_rush(m, ideal, n_max)?.end_h0;
    let t_eff = match t {
        Degree::Finite(v) => v.max(-1),
        Degree::NegInf => -1,
    };
    let rhs = power as i64 * (t_eff + 2) - 1;
    Ok(PowerBound {
        skipped: None,
        b,
        power,
        t,
        lhs,
        rhs,
        holds: lhs <= Degree::Finite(rhs),
    })
}

/// Which boundedness hypotheses an instance satisfies.
#[derive(Clone, Debug, Serialize)]
pub struct SweepHypotheses {
    /// `r^I(M) = -inf`.
    pub r_neg_inf: bool,
    /// `dim V(M) ∩ V^∞(I) <= 1`.
    pub intersection_at_most_one: bool,
    /// `dim V^∞(I) <= 1`.
    pub stable_variety_at_most_one: bool,
    /// `V(M) ∩ V^tot(I) = {0}`.
    pub total_intersection_trivial: bool,
}

impl SweepHypotheses {
    pub fn any(&self) -> bool {
        self.r_neg_inf || self.intersection_at_most_one || self.stable_variety_at_most_one || self.total_intersection_trivial
    }
}

pub fn sweep_hypotheses(m: &Module, ideal: &Arc<Ideal>, opts: EquivalenceOptions) -> Result<SweepHypotheses, BlowupError> {
    let eq = check_equivalences(m, ideal, opts)?;
    let vm = support_variety(m, None, opts.variety);
    let iv = ideal_varieties(ideal, opts.power_max, opts.variety);
    let inter = vm.sum(&iv.stable);
    let total = vm.sum(&iv.total);
    Ok(SweepHypotheses {
        r_neg_inf: eq.r_is_neg_inf,
        intersection_at_most_one: inter.dim <= 1,
        stable_variety_at_most_one: iv.stable.dim <= 1,
        total_intersection_trivial: total.dim == 0,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    /// `reg G_I(Ω^i(M))` for `0 <= i <= i_max`.
    pub regs: Vec<Degree>,
    /// The maximum is attained for `i <= 2`.
    pub bounded: bool,
}

/// `reg G_I(Ω^i M)` for `0 <= i <= i_max`, in parallel over `i`.
pub fn reg_syzygy_sweep(m: &Module, ideal: &Arc<Ideal>, i_max: usize) -> Result<SweepReport, BlowupError> {
    let res = minimal_resolution(m, i_max + 1);
    let modules: Vec<Module> = (0..=i_max)
        .map(|i| {
            if i == 0 {
                m.clone()
            } else {
                Module::new(res.ring().clone(), res.degrees[i].clone(), res.maps[i].clone()).unwrap()
            }
        })
        .collect();
    let regs = modules
        .par_iter()
        .map(|omega| Ok(assoc_graded(omega, ideal)?.regularity()))
        .collect::<Result<Vec<Degree>, BlowupError>>()?;
    Ok(SweepReport {
        bounded: sweep_bounded(&regs),
        regs,
    })
}

/// The maximum over `i > 2` does not exceed the maximum over `i <= 2`.
pub fn sweep_bounded(regs: &[Degree]) -> bool {
    let split = regs.len().min(3);
    let head = regs[..split].iter().max().copied().unwrap_or(Degree::NegInf);
    regs[split..].iter().all(|&r| r <= head)
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

    fn a1() -> Arc<CIRing> {
        ring(&["x", "z"], &["z^2"])
    }

    fn ideal(a: &Arc<CIRing>, gens: &[&str]) -> Arc<Ideal> {
        let g = gens.iter().map(|s| parse_poly(a.ring(), s).unwrap()).collect();
        Ideal::new(a.clone(), g).unwrap()
    }

    fn m1(a: &Arc<CIRing>) -> Module {
        Module::cyclic(a.clone(), &[parse_poly(a.ring(), "z").unwrap()]).unwrap()
    }

    fn dims(g: &GradedPresentation, top: i32) -> Vec<usize> {
        (0..=top).map(|n| g.dim(n)).collect()
    }

    /// Defect `ℓ(closure(I^n M) / I^n M)` by linear algebra on
    /// `M / I^{n+k} M` for a fixed large `k`.
    fn defect_oracle(m: &Module, i: &Ideal, n: usize, k: usize) -> usize {
        let q = GradedQuotient::new(module_power(m, i, n + k));
        let f = m.ring().ring().field();
        let gens = i.power_gens(k);
        let (lo, hi) = q.degree_range().unwrap();
        let mut kernel = 0;
        for e in lo..=hi {
            let dim = q.dim(e);
            if dim == 0 {
                continue;
            }
            let blocks: Vec<Matrix> = gens.iter().map(|g| q.mul_matrix(g, e)).collect();
            let rows: usize = blocks.iter().map(|b| b.rows).sum();
            let mut stacked = Matrix::zeros(rows, dim);
            let mut r0 = 0;
            for b in &blocks {
                stacked.put(r0, 0, b);
                r0 += b.rows;
            }
            kernel += dim - stacked.rank(f);
        }
        let big = power_colength(m, i, n + k).unwrap();
        let small = power_colength(m, i, n).unwrap();
        kernel - (big - small)
    }

    #[test]
    fn associated_graded_of_fixtures() {
        let a = a1();
        let free = Module::free(a.clone(), vec![0]);
        let m = ideal(&a, &["x", "z"]);
        let j = ideal(&a, &["x"]);
        let g = assoc_graded(&free, &m).unwrap();
        assert_eq!(dims(&g, 4), vec![1, 2, 2, 2, 2]);
        assert_eq!(g.regularity(), Degree::Finite(1));
        assert_eq!(g.ambient_regularity(), Some(Degree::Finite(1)));
        let g = assoc_graded(&free, &j).unwrap();
        assert_eq!(dims(&g, 4), vec![2, 2, 2, 2, 2]);
        assert_eq!(g.regularity(), Degree::Finite(0));
        assert_eq!(g.ambient_regularity(), None);
        let g = assoc_graded(&m1(&a), &j).unwrap();
        assert_eq!(dims(&g, 4), vec![1, 1, 1, 1, 1]);
        assert_eq!(g.regularity(), Degree::Finite(0));
    }

    #[test]
    fn cech_and_betti_regularity_agree() {
        let a = a1();
        let m = ideal(&a, &["x", "z"]);
        let j = ideal(&a, &["x"]);
        let free = Module::free(a.clone(), vec![0]);
        let g = assoc_graded(&m1(&a), &j).unwrap();
        let rep = local_cohomology_ends(&g, 4).unwrap();
        assert_eq!(rep.ends, vec![Degree::NegInf, Degree::Finite(-1)]);
        assert_eq!(rep.reg, Degree::Finite(0));
        assert!(rep.margin >= 4);
        let g = assoc_graded(&free, &m).unwrap();
        let rep = local_cohomology_ends(&g, 4).unwrap();
        assert_eq!(rep.reg, g.regularity());
        assert_eq!(Some(rep.reg), g.ambient_regularity());
        let zero = assoc_graded(&Module::zero(a.clone()), &m).unwrap();
        let rep = local_cohomology_ends(&zero, 4).unwrap();
        assert!(rep.ends.iter().all(|&e| e == Degree::NegInf));
        assert_eq!(rep.reg, Degree::NegInf);
        assert!(rep.to_csv().starts_with("n,H0\n"));
    }

    #[test]
    fn ratliff_rush_matches_oracle() {
        let a = a1();
        let m = ideal(&a, &["x", "z"]);
        let j = ideal(&a, &["x"]);
        let free = Module::free(a.clone(), vec![0]);
        assert_eq!(ratliff_rush(&free, &m, 4).unwrap().end_h0, Degree::NegInf);
        assert_eq!(ratliff_rush(&m1(&a), &j, 4).unwrap().end_h0, Degree::NegInf);
        let r = a.ring();
        let gens: Vec<Vector> = ["x^2", "z"]
            .iter()
            .map(|s| Vector::from_poly_at(r, ModOrder::POT, &parse_poly(r, s).unwrap(), 0))
            .collect();
        let gap = Module::submodule_of(&free, &gens, &[2, 1]);
        let chain = ratliff_rush(&gap, &m, 4).unwrap();
        let oracle: Vec<usize> = (1..=5).map(|n| defect_oracle(&gap, &m, n, 6)).collect();
        assert_eq!(chain.defects(), oracle);
        assert_eq!(oracle, vec![0; 5]);
        assert_eq!(chain.end_h0, Degree::NegInf);
        // x^2 y^2 lies in the closure of (x^4, x^3 y, x y^3, y^4) but not in it.
        let b = ring(&["x", "y", "z"], &["z^2"]);
        let i = ideal(&b, &["x^4", "x^3*y", "x*y^3", "y^4", "z"]);
        let free = Module::free(b.clone(), vec![0]);
        let chain = ratliff_rush(&free, &i, 2).unwrap();
        let oracle: Vec<usize> = (1..=3).map(|n| defect_oracle(&free, &i, n, 4)).collect();
        assert_eq!(chain.defects(), oracle);
        assert_eq!(oracle[0], 1);
        for l in &chain.levels {
            assert!(l.closure.contains_module(&module_power(&free, &i, l.power)));
        }
    }

    #[test]
    fn superficial_elements() {
        let a = a1();
        let m = ideal(&a, &["x", "z"]);
        let free = Module::free(a.clone(), vec![0]);
        let z = parse_poly(a.ring(), "z").unwrap();
        assert!(superficial_failure(&free, &m, &z, (1, 6)).is_some());
        let x = parse_poly(a.ring(), "x").unwrap();
        assert_eq!(superficial_failure(&free, &m, &x, (1, 6)), None);
        let s = find_superficial(&m, &[free], (1, 6), 3).unwrap();
        assert_eq!(s.degree, 1);
        let a2 = ring(&["x", "z1", "z2"], &["z1^2", "z2^2"]);
        let m2 = Ideal::maximal(a2.clone());
        let mods = [Module::free(a2.clone(), vec![0]), Module::cyclic(a2.clone(), &[parse_poly(a2.ring(), "z1").unwrap()]).unwrap()];
        let s = find_superficial(&m2, &mods, (1, 5), 11).unwrap();
        assert_ne!(s.element.terms().iter().find(|(mo, _)| mo.exp(0) == 1).map(|t| t.1), None);
    }

    #[test]
    fn power_bound_in_dimension_two() {
        let a = ring(&["x1", "x2", "z"], &["z^2"]);
        let m = Ideal::maximal(a.clone());
        let free = Module::free(a.clone(), vec![0]);
        let s = find_superficial(&m, std::slice::from_ref(&free), (1, 4), 5).unwrap();
        let b = end_h0_via_power(&free, &m, &s.element, 4).unwrap();
        assert!(b.skipped.is_none());
        assert!(b.holds, "{:?}", b);
    }

    #[test]
    fn power_bound_with_nonclosed_powers() {
        let a = ring(&["x1", "x2", "z"], &["z^2"]);
        let i = ideal(&a, &["x1^4", "x1^3*x2", "x1*x2^3", "x2^4", "z"]);
        let free = Module::free(a.clone(), vec![0]);
        let chain = ratliff_rush(&free, &i, 4).unwrap();
        assert_eq!(chain.defects(), vec![1, 1, 0, 0, 0]);
        assert_eq!(chain.end_h0, Degree::Finite(1));
        let window = superficial_window(&i, std::slice::from_ref(&free), 4).unwrap();
        assert_eq!(window, (3, 5));
        let x = parse_poly(a.ring(), "x1^4+x2^4").unwrap();
        assert_eq!(superficial_failure(&free, &i, &x, (2, 2)), Some(2));
        let s = find_superficial(&i, std::slice::from_ref(&free), window, 0).unwrap();
        let b = end_h0_via_power(&free, &i, &s.element, 4).unwrap();
        assert_eq!(b.lhs, Degree::Finite(1));
        assert!(b.holds, "{:?}", b);
    }

    #[test]
    fn sweep_for_periodic_module() {
        let a = a1();
        let j = ideal(&a, &["x"]);
        let rep = reg_syzygy_sweep(&m1(&a), &j, 6).unwrap();
        assert_eq!(rep.regs, vec![Degree::Finite(0); 7]);
        assert!(rep.bounded);
        let free = Module::free(a.clone(), vec![0]);
        let rep = reg_syzygy_sweep(&free, &j, 3).unwrap();
        assert_eq!(rep.regs[1..], [Degree::NegInf; 3]);
        assert!(sweep_bounded(&[Degree::Finite(2), Degree::Finite(1), Degree::Finite(0), Degree::Finite(2)]));
        assert!(!sweep_bounded(&[Degree::Finite(0), Degree::Finite(1), Degree::Finite(0), Degree::Finite(2)]));
    }
}

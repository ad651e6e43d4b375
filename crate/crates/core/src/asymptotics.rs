//! Length tables `ℓ(Ext^i(M, A/I^n))`, exact polynomial-degree fits, the
//! eventual even/odd degrees `r0`, `r1`, and checks relating them to
//! support varieties and Tor vanishing.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::ci_ring::{CIRing, Ideal};
use crate::operators::{ideal_varieties, support_variety, VarietyWindow};
use crate::poly::Poly;
use crate::resolve::{ext_length, mcm_approx, minimal_resolution, tor_length, FreeResolution, Module, ResolveError};

/// Polynomial degree, with the zero function at `NegInf` below every
/// integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(i64),
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{}", d),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Degree::NegInf => s.serialize_str("-inf"),
            Degree::Finite(d) => s.serialize_i64(*d),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FitError {
    #[error("inconclusive fit: {points} points do not determine a polynomial")]
    Inconclusive { points: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AsymptoticsError {
    #[error("row {row}: {source}")]
    Fit { row: usize, source: FitError },
    #[error("the ideal is not primary to the maximal ideal")]
    NotPrimary,
    #[error("resolution computed to {have}, need {need}; raise the cutoff")]
    Cutoff { have: usize, need: usize },
    #[error(transparent)]
    Resolve(#[from] ResolveError),
}

/// Least degree of a polynomial interpolating every value, accepted only
/// when at least `degree + 2` points confirm it.
pub fn fit_degree(values: &[i64]) -> Result<Degree, FitError> {
    if values.iter().all(|&v| v == 0) {
        return if values.is_empty() {
            Err(FitError::Inconclusive { points: 0 })
        } else {
            Ok(Degree::NegInf)
        };
    }
    let mut diffs = values.to_vec();
    for d in 0.. {
        if diffs.len() < 2 {
            break;
        }
        diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
        if diffs.iter().all(|&v| v == 0) {
            return Ok(Degree::Finite(d));
        }
    }
    Err(FitError::Inconclusive { points: values.len() })
}

/// Degree of the eventual polynomial of `row` (indexed from `n = 1`),
/// sliding the window start forward from `burn_in` until a fit is exact.
pub fn fit_psi(row: &[i64], burn_in: usize) -> Result<Degree, FitError> {
    let first = burn_in.max(1) - 1;
    for start in first..row.len() {
        if let Ok(d) = fit_degree(&row[start..]) {
            return Ok(d);
        }
    }
    Err(FitError::Inconclusive { points: row.len().saturating_sub(first) })
}

/// Window parameters shared by the table-based computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Windows {
    pub i_max: usize,
    pub n_max: usize,
    pub burn_n: usize,
    pub burn_i: usize,
}

impl Default for Windows {
    fn default() -> Self {
        Windows {
            i_max: 9,
            n_max: 8,
            burn_n: 2,
            burn_i: 3,
        }
    }
}

/// `cells[i - 1][n - 1] = ℓ(Ext^i(M, A/I^n))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthTable {
    pub cells: Vec<Vec<usize>>,
}

impl LengthTable {
    pub fn get(&self, i: usize, n: usize) -> usize {
        self.cells[i - 1][n - 1]
    }

    pub fn i_max(&self) -> usize {
        self.cells.len()
    }

    pub fn n_max(&self) -> usize {
        self.cells.first().map_or(0, Vec::len)
    }

    pub fn is_zero(&self) -> bool {
        self.cells.iter().flatten().all(|&c| c == 0)
    }

    pub fn row(&self, i: usize) -> Vec<i64> {
        self.cells[i - 1].iter().map(|&c| c as i64).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("i\\n");
        for n in 1..=self.n_max() {
            out.push_str(&format!(",{}", n));
        }
        out.push('\n');
        for (i, row) in self.cells.iter().enumerate() {
            out.push_str(&(i + 1).to_string());
            for c in row {
                out.push_str(&format!(",{}", c));
            }
            out.push('\n');
        }
        out
    }
}

fn require_primary(ideal: &Ideal) -> Result<(), AsymptoticsError> {
    if ideal.is_m_primary() {
        Ok(())
    } else {
        Err(AsymptoticsError::NotPrimary)
    }
}

/// Table from a given (possibly non-minimal) resolution.
pub fn length_table_from(res: &FreeResolution, ideal: &Ideal, i_max: usize, n_max: usize) -> Result<LengthTable, AsymptoticsError> {
    require_primary(ideal)?;
    if i_max >= res.cutoff() {
        return Err(AsymptoticsError::Cutoff { have: res.cutoff(), need: i_max + 1 });
    }
    let quotients: Vec<_> = (1..=n_max).map(|n| ideal.quotient(n)).collect();
    let cells: Vec<usize> = (0..i_max * n_max)
        .into_par_iter()
        .map(|c| ext_length(res, &quotients[c % n_max], c / n_max + 1))
        .collect();
    Ok(LengthTable {
        cells: cells.chunks(n_max).map(|r| r.to_vec()).collect(),
    })
}

pub fn ext_length_table(m: &Module, ideal: &Ideal, i_max: usize, n_max: usize) -> Result<LengthTable, AsymptoticsError> {
    require_primary(ideal)?;
    let res = minimal_resolution(m, i_max + 1);
    length_table_from(&res, ideal, i_max, n_max)
}

#[derive(Clone, Debug, Serialize)]
pub struct PsiReport {
    /// `psi[i - 1] = ψ_i`.
    pub psi: Vec<Degree>,
    pub r0: Degree,
    pub r1: Degree,
    pub r: Degree,
    pub windows: Windows,
    pub flags: Vec<String>,
}

impl PsiReport {
    /// Set when an even or odd tail fails to be constant.
    pub fn violation(&self) -> bool {
        self.flags.iter().any(|f| f.starts_with("non-constant"))
    }
}

fn tail_value(psi: &[Degree], parity: usize, w: &Windows, flags: &mut Vec<String>) -> Degree {
    let tail: Vec<Degree> = (w.burn_i..=psi.len())
        .filter(|i| i % 2 == parity)
        .map(|i| psi[i - 1])
        .collect();
    let name = if parity == 0 { "even" } else { "odd" };
    if tail.len() < 3 {
        flags.push(format!("short {} window: {} values", name, tail.len()));
    }
    let Some(&last) = tail.last() else {
        return Degree::NegInf;
    };
    if tail.iter().any(|&d| d != last) {
        flags.push(format!("non-constant {} tail: {:?}", name, tail.iter().map(|d| d.to_string()).collect::<Vec<_>>()));
    }
    last
}

pub fn psi_report(table: &LengthTable, w: Windows) -> Result<PsiReport, AsymptoticsError> {
    let psi: Vec<Degree> = (1..=table.i_max())
        .map(|i| fit_psi(&table.row(i), w.burn_n).map_err(|source| AsymptoticsError::Fit { row: i, source }))
        .collect::<Result<_, _>>()?;
    let mut flags = Vec::new();
    let r0 = tail_value(&psi, 0, &w, &mut flags);
    let r1 = tail_value(&psi, 1, &w, &mut flags);
    Ok(PsiReport {
        psi,
        r0,
        r1,
        r: r0.max(r1),
        windows: w,
        flags,
    })
}

pub fn r_invariants(m: &Module, ideal: &Ideal, w: Windows) -> Result<PsiReport, AsymptoticsError> {
    psi_report(&ext_length_table(m, ideal, w.i_max, w.n_max)?, w)
}

/// The five conditions characterizing `r^I(M) = -∞` for MCM `M`.
#[derive(Clone, Debug, Serialize)]
pub struct Equivalences {
    pub r_is_neg_inf: bool,
    pub eventual_row_vanishing: bool,
    pub uniform_vanishing: bool,
    pub varieties_meet_at_origin: bool,
    pub tor_vanishing: bool,
    pub stabilization_index: usize,
    pub flags: Vec<String>,
}

impl Equivalences {
    pub fn values(&self) -> [bool; 5] {
        [
            self.r_is_neg_inf,
            self.eventual_row_vanishing,
            self.uniform_vanishing,
            self.varieties_meet_at_origin,
            self.tor_vanishing,
        ]
    }

    pub fn agree(&self) -> bool {
        let v = self.values();
        v.iter().all(|&b| b == v[0])
    }
}

/// Parameters of the variety side of the equivalence check.
#[derive(Clone, Copy, Debug)]
pub struct EquivalenceOptions {
    pub windows: Windows,
    pub variety: VarietyWindow,
    pub power_max: usize,
    pub tor_powers: usize,
}

impl Default for EquivalenceOptions {
    fn default() -> Self {
        EquivalenceOptions {
            windows: Windows::default(),
            variety: VarietyWindow::default(),
            power_max: 4,
            tor_powers: 2,
        }
    }
}

pub fn check_equivalences(m: &Module, ideal: &Arc<Ideal>, opts: EquivalenceOptions) -> Result<Equivalences, AsymptoticsError> {
    crate::resolve::require_mcm(m)?;
    let w = opts.windows;
    let res = minimal_resolution(m, w.i_max + 1);
    let table = length_table_from(&res, ideal, w.i_max, w.n_max)?;
    let report = psi_report(&table, w)?;
    let mut flags = report.flags.clone();
    let rows = w.burn_i..=w.i_max;
    // (ii): each late row ends in at least two zeros
    let eventual_row_vanishing = rows.clone().all(|i| {
        let r = table.row(i);
        r[r.len() - 2..].iter().all(|&v| v == 0)
    });
    // (iii): one n0 serves every late row
    let uniform_vanishing = (1..w.n_max).any(|n0| rows.clone().all(|i| (n0..=w.n_max).all(|n| table.get(i, n) == 0)));
    let iv = ideal_varieties(ideal, opts.power_max, opts.variety);
    if iv.short_window {
        flags.push(format!("ideal varieties stabilize only from n = {}", iv.index));
    }
    let vm = support_variety(m, None, opts.variety);
    if vm.inconclusive || iv.stable.inconclusive {
        flags.push("variety windows disagree".into());
    }
    let varieties_meet_at_origin = iv.stable.sum(&vm).dim == 0;
    let t = iv.index;
    let tor_vanishing = (t..t + opts.tor_powers).all(|n| {
        let q = ideal.quotient(n);
        (1..=w.i_max).all(|i| tor_length(&res, &q, i) == 0)
    });
    Ok(Equivalences {
        r_is_neg_inf: report.r == Degree::NegInf,
        eventual_row_vanishing,
        uniform_vanishing,
        varieties_meet_at_origin,
        tor_vanishing,
        stabilization_index: t,
        flags,
    })
}

/// Comparison of `ψ_i(M/xM)` with `max(ψ_{i-1}(M), ψ_i(M))`, and of
/// `r(D)` with `r(M)` for the cone-built approximation `D` of `M/xM`.
#[derive(Clone, Debug, Serialize)]
pub struct ModxComparison {
    pub psi_m: Vec<Degree>,
    pub psi_quotient: Vec<Degree>,
    pub formula_holds: Vec<(usize, bool)>,
    pub r_m: Degree,
    pub r_approximation: Degree,
}

impl ModxComparison {
    pub fn holds(&self) -> bool {
        self.formula_holds.iter().all(|&(_, b)| b) && self.r_m == self.r_approximation
    }
}

pub fn psi_under_modx(m: &Module, ideal: &Ideal, x: &Poly, w: Windows) -> Result<ModxComparison, AsymptoticsError> {
    let approx = mcm_approx(m, std::slice::from_ref(x))?;
    let pm = r_invariants(m, ideal, w)?;
    let pq = r_invariants(&approx.quotient, ideal, w)?;
    let pd = r_invariants(&approx.approximation, ideal, w)?;
    let formula_holds = (3..=w.i_max.min(8))
        .map(|i| (i, pq.psi[i - 1] == pm.psi[i - 2].max(pm.psi[i - 1])))
        .collect();
    Ok(ModxComparison {
        psi_m: pm.psi,
        psi_quotient: pq.psi,
        formula_holds,
        r_m: pm.r,
        r_approximation: pd.r,
    })
}

/// `r` over `B = A/(x)` for `N = M/xM`, `J = I/(x)`, when `r^I(M) = -∞`.
#[derive(Clone, Debug, Serialize)]
pub struct Descent {
    pub skipped: Option<String>,
    pub r_quotient: Option<Degree>,
}

pub fn psi_superficial_descent(m: &Module, ideal: &Ideal, x: &Poly, w: Windows) -> Result<Descent, AsymptoticsError> {
    let base = r_invariants(m, ideal, w)?;
    if base.r != Degree::NegInf {
        return Ok(Descent {
            skipped: Some(format!("r = {} is finite", base.r)),
            r_quotient: None,
        });
    }
    let ring: &Arc<CIRing> = m.ring();
    let (b, section) = ring.quotient_by_linear(x).map_err(ResolveError::from)?;
    let rels = m.relations().iter().map(|v| section.apply_vector(v)).collect();
    let n = Module::new(b.clone(), m.degrees().to_vec(), rels)?;
    let gens: Vec<Poly> = ideal
        .gens()
        .iter()
        .map(|g| section.apply(g))
        .filter(|g| !g.is_zero())
        .collect();
    let j = Ideal::new(b, gens).map_err(ResolveError::from)?;
    let r = r_invariants(&n, &j, w)?;
    Ok(Descent {
        skipped: None,
        r_quotient: Some(r.r),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, PolyRing};

    #[test]
    fn fits() {
        assert_eq!(fit_degree(&[1, 1, 1, 1, 1, 1]).unwrap(), Degree::Finite(0));
        assert_eq!(fit_degree(&[0; 6]).unwrap(), Degree::NegInf);
        assert_eq!(fit_degree(&[1, 3, 5, 7, 9, 11]).unwrap(), Degree::Finite(1));
        assert!(fit_degree(&[1, 2]).is_err());
        assert_eq!(fit_psi(&[5, 0, 0, 0], 2).unwrap(), Degree::NegInf);
        assert_eq!(fit_psi(&[9, 1, 4, 9, 16, 25, 36], 2).unwrap(), Degree::Finite(2));
        assert!(Degree::NegInf < Degree::Finite(-5));
        assert_eq!(serde_json::to_string(&Degree::NegInf).unwrap(), "\"-inf\"");
    }

    #[test]
    fn tables_for_m1() {
        let r = Arc::new(PolyRing::standard(101, &["x", "z"]).unwrap());
        let a = CIRing::new(r.clone(), vec![parse_poly(&r, "z^2").unwrap()]).unwrap();
        let m1 = Module::cyclic(a.clone(), &[parse_poly(&r, "z").unwrap()]).unwrap();
        let w = Windows { i_max: 5, n_max: 5, ..Default::default() };
        let t = ext_length_table(&m1, &Ideal::maximal(a.clone()), 5, 5).unwrap();
        assert!(t.cells.iter().flatten().all(|&c| c == 1));
        let p = psi_report(&t, w).unwrap();
        assert_eq!(p.r, Degree::Finite(0));
        let j = Ideal::new(a.clone(), vec![parse_poly(&r, "x").unwrap()]).unwrap();
        let t = ext_length_table(&m1, &j, 5, 5).unwrap();
        assert!(t.is_zero());
        assert_eq!(psi_report(&t, w).unwrap().r, Degree::NegInf);
        assert!(t.to_csv().starts_with("i\\n,1,2,3,4,5\n1,0,0"));
    }
}

//! Ext and Tor against a graded quotient `N`, one internal degree at a time.

use super::FreeResolution;
use crate::poly::{GradedQuotient, Matrix};

fn block_offsets(n: &GradedQuotient, degs: &[i32], base: i32, sign: i32) -> (Vec<usize>, usize) {
    let mut offs = Vec::with_capacity(degs.len());
    let mut total = 0;
    for &g in degs {
        offs.push(total);
        total += n.dim(base + sign * g);
    }
    (offs, total)
}

/// `Hom(∂_{i+1}, N)_e : Hom(F_i, N)_e -> Hom(F_{i+1}, N)_e`.
pub(crate) fn hom_matrix(res: &FreeResolution, n: &GradedQuotient, i: usize, e: i32) -> Matrix {
    let src = &res.degrees[i];
    let dst = &res.degrees[i + 1];
    let (coff, cols) = block_offsets(n, src, e, 1);
    let (roff, rows) = block_offsets(n, dst, e, 1);
    let mut m = Matrix::zeros(rows, cols);
    if rows == 0 || cols == 0 {
        return m;
    }
    for (l, col) in res.entries(i + 1).iter().enumerate() {
        for (k, p) in col.iter().enumerate() {
            if p.is_zero() || n.dim(src[k] + e) == 0 {
                continue;
            }
            let b = n.mul_matrix(p, src[k] + e);
            for r in 0..b.rows {
                for c in 0..b.cols {
                    let v = b.get(r, c);
                    if v != 0 {
                        m.set(roff[l] + r, coff[k] + c, v);
                    }
                }
            }
        }
    }
    m
}

/// `(∂_i ⊗ N)_e : (F_i ⊗ N)_e -> (F_{i-1} ⊗ N)_e`.
pub(crate) fn tor_matrix(res: &FreeResolution, n: &GradedQuotient, i: usize, e: i32) -> Matrix {
    let src = &res.degrees[i];
    let dst = &res.degrees[i - 1];
    let (coff, cols) = block_offsets(n, src, e, -1);
    let (roff, rows) = block_offsets(n, dst, e, -1);
    let mut m = Matrix::zeros(rows, cols);
    if rows == 0 || cols == 0 {
        return m;
    }
    for (l, col) in res.entries(i).iter().enumerate() {
        if n.dim(e - src[l]) == 0 {
            continue;
        }
        for (k, p) in col.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let b = n.mul_matrix(p, e - src[l]);
            for r in 0..b.rows {
                for c in 0..b.cols {
                    let v = b.get(r, c);
                    if v != 0 {
                        m.set(roff[k] + r, coff[l] + c, v);
                    }
                }
            }
        }
    }
    m
}

fn need(res: &FreeResolution, i: usize) {
    assert!(
        i < res.cutoff(),
        "homological degree {} needs a resolution deeper than {}",
        i,
        res.cutoff()
    );
}

/// `dim Ext^i(M, N)_e`.
pub fn ext_dim(res: &FreeResolution, n: &GradedQuotient, i: usize, e: i32) -> usize {
    need(res, i);
    let f = n.ring().field();
    let dim: usize = res.degrees[i].iter().map(|&g| n.dim(g + e)).sum();
    if dim == 0 {
        return 0;
    }
    let out = hom_matrix(res, n, i, e).rank(f);
    let inc = if i == 0 { 0 } else { hom_matrix(res, n, i - 1, e).rank(f) };
    dim - out - inc
}

/// `dim Tor_i(M, N)_e`.
pub fn tor_dim(res: &FreeResolution, n: &GradedQuotient, i: usize, e: i32) -> usize {
    need(res, i);
    let f = n.ring().field();
    let dim: usize = res.degrees[i].iter().map(|&g| n.dim(e - g)).sum();
    if dim == 0 {
        return 0;
    }
    let out = if i == 0 { 0 } else { tor_matrix(res, n, i, e).rank(f) };
    let inc = tor_matrix(res, n, i + 1, e).rank(f);
    dim - out - inc
}

fn span(degs: &[i32]) -> Option<(i32, i32)> {
    Some((*degs.iter().min()?, *degs.iter().max()?))
}

/// `ℓ(Ext^i(M, N))` for finite-length `N`.
pub fn ext_length(res: &FreeResolution, n: &GradedQuotient, i: usize) -> usize {
    need(res, i);
    let (Some((lo, hi)), Some((gmin, gmax))) = (n.degree_range(), span(&res.degrees[i])) else {
        return 0;
    };
    (lo - gmax..=hi - gmin).map(|e| ext_dim(res, n, i, e)).sum()
}

/// `ℓ(Tor_i(M, N))` for finite-length `N`.
pub fn tor_length(res: &FreeResolution, n: &GradedQuotient, i: usize) -> usize {
    need(res, i);
    let (Some((lo, hi)), Some((gmin, gmax))) = (n.degree_range(), span(&res.degrees[i])) else {
        return 0;
    };
    (lo + gmin..=hi + gmax).map(|e| tor_dim(res, n, i, e)).sum()
}

/// `dim Ext^i(M, N)_e` for `e` in a window; `N` may have infinite length.
pub fn hom_window_dims(res: &FreeResolution, n: &GradedQuotient, i: usize, lo: i32, hi: i32) -> Vec<(i32, usize)> {
    (lo..=hi).map(|e| (e, ext_dim(res, n, i, e))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ci_ring::{CIRing, Ideal};
    use crate::poly::{parse_poly, PolyRing};
    use crate::resolve::{minimal_resolution, Module};
    use std::sync::Arc;

    fn a1() -> Arc<CIRing> {
        let r = Arc::new(PolyRing::standard(101, &["x", "z"]).unwrap());
        let f = vec![parse_poly(&r, "z^2").unwrap()];
        CIRing::new(r, f).unwrap()
    }

    #[test]
    fn ext_of_m1_against_powers() {
        let a = a1();
        let r = a.ring().clone();
        let m1 = Module::cyclic(a.clone(), &[parse_poly(&r, "z").unwrap()]).unwrap();
        let res = minimal_resolution(&m1, 5);
        let m = Ideal::maximal(a.clone());
        let j = Ideal::new(a.clone(), vec![parse_poly(&r, "x").unwrap()]).unwrap();
        for n in 1..=4 {
            for i in 1..=4 {
                assert_eq!(ext_length(&res, &m.quotient(n), i), 1, "m, i={} n={}", i, n);
                assert_eq!(ext_length(&res, &j.quotient(n), i), 0, "J, i={} n={}", i, n);
            }
            // Hom(M1, A/m^n) = annihilator of z in A/m^n
            assert_eq!(ext_length(&res, &m.quotient(n), 0), n);
        }
    }

    #[test]
    fn tor_with_residue_field_gives_betti_numbers() {
        let a = a1();
        let k = Module::residue_field(a.clone());
        let res = minimal_resolution(&k, 5);
        let kq = Ideal::maximal(a).quotient(1);
        for i in 0..5 {
            assert_eq!(tor_length(&res, &kq, i), res.betti()[i]);
            assert_eq!(ext_length(&res, &kq, i), res.betti()[i]);
        }
    }

    #[test]
    fn mcm_modules_have_no_higher_ext_into_the_ring() {
        let a = a1();
        let r = a.ring().clone();
        let m1 = Module::cyclic(a.clone(), &[parse_poly(&r, "z").unwrap()]).unwrap();
        let res = minimal_resolution(&m1, 3);
        let dims = hom_window_dims(&res, a.algebra(), 1, -6, 6);
        assert!(dims.iter().all(|&(_, d)| d == 0));
        let k = minimal_resolution(&Module::residue_field(a.clone()), 3);
        assert!(hom_window_dims(&k, a.algebra(), 1, -6, 6).iter().any(|&(_, d)| d > 0));
    }
}

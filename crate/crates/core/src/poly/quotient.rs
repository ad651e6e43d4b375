//! Degreewise linear algebra on graded quotients `P^r / U`.
//!
//! Each homogeneous component is a finite-dimensional vector space with a
//! basis of standard monomials; multiplication by a homogeneous polynomial
//! becomes a dense matrix between components.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::{FreeSubmodule, HilbertSeries, Matrix, ModOrder, Mono, Poly, PolyError, PolyRing, Term, Vector};

/// Standard-monomial basis of one homogeneous component.
#[derive(Debug)]
pub struct Piece {
    pub basis: Vec<(Mono, usize)>,
    index: HashMap<(Mono, usize), usize>,
}

impl Piece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, m: &Mono, pos: usize) -> Option<usize> {
        self.index.get(&(*m, pos)).copied()
    }
}

#[derive(Debug)]
pub struct GradedQuotient {
    sub: FreeSubmodule,
    leads: Vec<Vec<Mono>>,
    pieces: Mutex<HashMap<i32, Arc<Piece>>>,
}

impl GradedQuotient {
    pub fn new(sub: FreeSubmodule) -> Self {
        let leads = sub.lead_monomials();
        GradedQuotient {
            sub,
            leads,
            pieces: Mutex::new(HashMap::new()),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.sub.ring()
    }

    pub fn submodule(&self) -> &FreeSubmodule {
        &self.sub
    }

    pub fn rank(&self) -> usize {
        self.sub.rank()
    }

    pub fn shifts(&self) -> &[i32] {
        self.sub.shifts()
    }

    pub fn piece(&self, e: i32) -> Arc<Piece> {
        if let Some(p) = self.pieces.lock().unwrap().get(&e) {
            return p.clone();
        }
        let ring = self.ring();
        let mut basis = Vec::new();
        for k in 0..self.rank() {
            let d = e - self.shifts()[k];
            if d < 0 {
                continue;
            }
            for m in ring.monomials_of_degree(d as u32) {
                if !self.leads[k].iter().any(|l| l.divides(&m)) {
                    basis.push((m, k));
                }
            }
        }
        let index = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let piece = Arc::new(Piece { basis, index });
        self.pieces.lock().unwrap().insert(e, piece.clone());
        piece
    }

    pub fn dim(&self, e: i32) -> usize {
        self.piece(e).dim()
    }

    pub fn reduce(&self, v: &Vector) -> Vector {
        self.sub.reduce(v)
    }

    /// Coordinates of a homogeneous element of degree `e`.
    pub fn coords(&self, v: &Vector, e: i32) -> Vec<u32> {
        let piece = self.piece(e);
        let mut out = vec![0u32; piece.dim()];
        for t in self.reduce(v).terms() {
            let i = piece
                .position(&t.mono, t.pos as usize)
                .expect("normal form term outside the degree component");
            out[i] = t.coef;
        }
        out
    }

    /// The element with the given coordinates in degree `e`.
    pub fn element(&self, e: i32, coords: &[u32]) -> Vector {
        let piece = self.piece(e);
        let terms = piece
            .basis
            .iter()
            .zip(coords)
            .filter(|(_, &c)| c != 0)
            .map(|(&(mono, pos), &coef)| Term {
                mono,
                pos: pos as u32,
                coef,
            })
            .collect();
        Vector::from_terms(self.ring(), ModOrder::POT, terms)
    }

    /// Matrix of multiplication by `p` from degree `e` to `e + deg p`.
    pub fn mul_matrix(&self, p: &Poly, e: i32) -> Matrix {
        let dp = p.degree().unwrap_or(0) as i32;
        let src = self.piece(e);
        let dst = self.piece(e + dp);
        let mut m = Matrix::zeros(dst.dim(), src.dim());
        if p.is_zero() {
            return m;
        }
        let ring = self.ring();
        for (j, &(mono, pos)) in src.basis.iter().enumerate() {
            let v = Vector::from_poly_at(ring, ModOrder::POT, p, pos).mul_term(ring, &mono, 1);
            for t in self.reduce(&v).terms() {
                let i = dst.position(&t.mono, t.pos as usize).unwrap();
                m.set(i, j, t.coef);
            }
        }
        m
    }

    /// Offsets of each degree in a finite-length quotient's total basis.
    pub fn total_layout(&self) -> (i32, Vec<usize>, usize) {
        let Some((lo, hi)) = self.degree_range() else {
            return (0, Vec::new(), 0);
        };
        let mut offs = Vec::new();
        let mut total = 0;
        for e in lo..=hi {
            offs.push(total);
            total += self.dim(e);
        }
        (lo, offs, total)
    }

    /// Multiplication by `p` on the whole (finite-length) quotient.
    pub fn total_mul_matrix(&self, p: &Poly) -> Matrix {
        let (lo, offs, total) = self.total_layout();
        let mut m = Matrix::zeros(total, total);
        if p.is_zero() {
            return m;
        }
        let dp = p.degree().unwrap() as i32;
        for (k, &off) in offs.iter().enumerate() {
            let e = lo + k as i32;
            let t = e + dp - lo;
            if t < 0 || t as usize >= offs.len() || self.dim(e) == 0 {
                continue;
            }
            m.put(offs[t as usize], off, &self.mul_matrix(p, e));
        }
        m
    }

    pub fn hilbert_series(&self) -> Result<HilbertSeries, PolyError> {
        self.sub.hilbert_series()
    }

    /// Lowest and highest nonzero degree for a finite-length quotient.
    pub fn degree_range(&self) -> Option<(i32, i32)> {
        let hs = self.hilbert_series().ok()?;
        if hs.is_zero() {
            return None;
        }
        let top = hs.top_degree()?;
        let lo = (hs.offset..=top).find(|&e| self.dim(e) > 0)?;
        Some((lo, top))
    }

    /// Total dimension, if finite.
    pub fn length(&self) -> Option<usize> {
        self.hilbert_series()
            .ok()?
            .total_length()
            .map(|v| v as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn truncated_quotient_dimensions() {
        let r = Arc::new(PolyRing::standard(101, &["x", "z"]).unwrap());
        let gens: Vec<Poly> = ["z^2", "x^3", "x^2*z"]
            .iter()
            .map(|s| parse_poly(&r, s).unwrap())
            .collect();
        let q = GradedQuotient::new(FreeSubmodule::ideal(r.clone(), &gens));
        let dims: Vec<usize> = (0..5).map(|e| q.dim(e)).collect();
        assert_eq!(dims, vec![1, 2, 2, 0, 0]);
        assert_eq!(q.length(), Some(5));
        assert_eq!(q.degree_range(), Some((0, 2)));
        let x = parse_poly(&r, "x").unwrap();
        let m = q.mul_matrix(&x, 1);
        assert_eq!((m.rows, m.cols), (2, 2));
        assert_eq!(m.rank(r.field()), 2);
        assert!(q.mul_matrix(&x, 2).data.is_empty());
    }
}

//! Elements of graded free modules `P^r`.
//!
//! Terms are ordered position-over-term (lower index is larger), optionally
//! preceded by an elimination block of variables.

use std::cmp::Ordering;

use super::{Mono, Poly, PolyRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub mono: Mono,
    pub pos: u32,
    pub coef: u32,
}

/// Module term order: eliminated variables first, then position, then the
/// ring's monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct ModOrder {
    pub elim: u32,
}

impl ModOrder {
    pub const POT: ModOrder = ModOrder { elim: 0 };

    #[inline]
    pub fn cmp(&self, ring: &PolyRing, a: &Mono, apos: u32, b: &Mono, bpos: u32) -> Ordering {
        if self.elim != 0 {
            let o = ring.cmp_block(a, b, self.elim);
            if o != Ordering::Equal {
                return o;
            }
        }
        match bpos.cmp(&apos) {
            Ordering::Equal => ring.cmp_mono(a, b, 0),
            o => o,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    terms: Vec<Term>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn from_terms(ring: &PolyRing, ord: ModOrder, mut terms: Vec<Term>) -> Self {
        let f = ring.field();
        terms.sort_by(|a, b| ord.cmp(ring, &b.mono, b.pos, &a.mono, a.pos));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono && last.pos == t.pos => {
                    last.coef = f.add(last.coef, t.coef)
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coef != 0);
        Vector { terms: out }
    }

    /// Assemble from one polynomial per position.
    pub fn from_polys(ring: &PolyRing, ord: ModOrder, entries: &[Poly]) -> Self {
        let mut terms = Vec::new();
        for (k, p) in entries.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push(Term {
                    mono: *m,
                    pos: k as u32,
                    coef: *c,
                });
            }
        }
        Vector::from_terms(ring, ord, terms)
    }

    pub fn unit(pos: usize) -> Self {
        Vector {
            terms: vec![Term {
                mono: Mono::one(),
                pos: pos as u32,
                coef: 1,
            }],
        }
    }

    pub fn from_poly_at(ring: &PolyRing, ord: ModOrder, p: &Poly, pos: usize) -> Self {
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| Term {
                mono: *m,
                pos: pos as u32,
                coef: *c,
            })
            .collect();
        Vector::from_terms(ring, ord, terms)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Degree of the leading term under the given shifts.
    pub fn degree(&self, shifts: &[i32]) -> Option<i32> {
        self.lead()
            .map(|t| t.mono.deg() as i32 + shifts[t.pos as usize])
    }

    pub fn is_homogeneous(&self, shifts: &[i32]) -> bool {
        match self.degree(shifts) {
            None => true,
            Some(d) => self
                .terms
                .iter()
                .all(|t| t.mono.deg() as i32 + shifts[t.pos as usize] == d),
        }
    }

    pub fn max_pos(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.pos as usize).max()
    }

    /// The entry at position `pos`.
    pub fn component(&self, ring: &PolyRing, pos: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.pos as usize == pos)
            .map(|t| (t.mono, t.coef))
            .collect();
        Poly::from_terms(ring, terms)
    }

    pub fn components(&self, ring: &PolyRing, rank: usize) -> Vec<Poly> {
        let mut buckets: Vec<Vec<(Mono, u32)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            buckets[t.pos as usize].push((t.mono, t.coef));
        }
        buckets
            .into_iter()
            .map(|b| Poly::from_terms(ring, b))
            .collect()
    }

    /// Keep positions in `[lo, hi)` and renumber them from zero.
    pub fn slice(&self, lo: usize, hi: usize) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .filter(|t| (t.pos as usize) >= lo && (t.pos as usize) < hi)
                .map(|t| Term {
                    pos: t.pos - lo as u32,
                    ..*t
                })
                .collect(),
        }
    }

    /// Shift every position up by `k` (order is preserved under POT).
    pub fn offset(&self, k: usize) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    pos: t.pos + k as u32,
                    ..*t
                })
                .collect(),
        }
    }

    /// Re-sort under a different module order.
    pub fn reorder(&self, ring: &PolyRing, ord: ModOrder) -> Vector {
        Vector::from_terms(ring, ord, self.terms.clone())
    }

    /// Map positions through `perm` (old position -> new position).
    pub fn permute(&self, ring: &PolyRing, ord: ModOrder, perm: &[usize]) -> Vector {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                pos: perm[t.pos as usize] as u32,
                ..*t
            })
            .collect();
        Vector::from_terms(ring, ord, terms)
    }

    pub fn add(&self, ring: &PolyRing, ord: ModOrder, other: &Vector) -> Vector {
        self.add_mul(ring, ord, 1, &Mono::one(), other)
    }

    pub fn sub(&self, ring: &PolyRing, ord: ModOrder, other: &Vector) -> Vector {
        self.add_mul(ring, ord, ring.field().neg(1), &Mono::one(), other)
    }

    pub fn scale(&self, ring: &PolyRing, c: u32) -> Vector {
        if c == 0 {
            return Vector::zero();
        }
        let f = ring.field();
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coef: f.mul(t.coef, c),
                    ..*t
                })
                .collect(),
        }
    }

    pub fn make_monic(&self, ring: &PolyRing) -> Vector {
        match self.lead() {
            None => Vector::zero(),
            Some(t) => self.scale(ring, ring.field().inv(t.coef)),
        }
    }

    /// Terms already in descending order with no zero coefficients.
    pub(crate) fn from_sorted(terms: Vec<Term>) -> Self {
        Vector { terms }
    }

    pub(crate) fn slice_from(&self, k: usize) -> Vector {
        Vector {
            terms: self.terms[k.min(self.terms.len())..].to_vec(),
        }
    }

    /// Term orders are compatible with multiplication, so no re-sort is needed.
    pub fn mul_term(&self, ring: &PolyRing, m: &Mono, c: u32) -> Vector {
        if c == 0 {
            return Vector::zero();
        }
        let f = ring.field();
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.mul(m),
                    pos: t.pos,
                    coef: f.mul(t.coef, c),
                })
                .collect(),
        }
    }

    pub fn mul_poly(&self, ring: &PolyRing, ord: ModOrder, p: &Poly) -> Vector {
        let mut acc = Vector::zero();
        for (m, c) in p.terms() {
            acc = acc.add_mul(ring, ord, *c, m, self);
        }
        acc
    }

    /// `self + c * m * other`.
    pub fn add_mul(&self, ring: &PolyRing, ord: ModOrder, c: u32, m: &Mono, other: &Vector) -> Vector {
        let f = ring.field();
        let a = &self.terms;
        let b = &other.terms;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let bm = b[j].mono.mul(m);
            match ord.cmp(ring, &a[i].mono, a[i].pos, &bm, b[j].pos) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        mono: bm,
                        pos: b[j].pos,
                        coef: f.mul(b[j].coef, c),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.add(a[i].coef, f.mul(b[j].coef, c));
                    if v != 0 {
                        out.push(Term {
                            mono: a[i].mono,
                            pos: a[i].pos,
                            coef: v,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|t| Term {
            mono: t.mono.mul(m),
            pos: t.pos,
            coef: f.mul(t.coef, c),
        }));
        Vector { terms: out }
    }

    pub fn fmt(&self, ring: &PolyRing, rank: usize) -> String {
        let comps: Vec<String> = self
            .components(ring, rank)
            .iter()
            .map(|p| p.fmt(ring))
            .collect();
        format!("({})", comps.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pot_prefers_lower_position() {
        let r = PolyRing::standard(101, &["x", "z"]).unwrap();
        let ord = ModOrder::POT;
        let x2 = r.mono(&[2, 0]);
        let one = Mono::one();
        assert_eq!(ord.cmp(&r, &one, 0, &x2, 1), Ordering::Greater);
        let v = Vector::from_polys(
            &r,
            ord,
            &[Poly::var(&r, 1), Poly::term(x2, 1)],
        );
        assert_eq!(v.lead().unwrap().pos, 0);
        assert_eq!(v.fmt(&r, 2), "(z, x^2)");
    }

    #[test]
    fn elimination_block_dominates() {
        let r = PolyRing::standard(101, &["x", "u"]).unwrap();
        let ord = ModOrder { elim: 0b10 };
        let u = r.mono(&[0, 1]);
        let x5 = r.mono(&[5, 0]);
        assert_eq!(ord.cmp(&r, &u, 1, &x5, 0), Ordering::Greater);
    }
}

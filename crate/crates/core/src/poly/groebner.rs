//! Buchberger's algorithm for submodules of free modules, with the normal
//! selection strategy and the Gebauer–Möller pair criteria.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{ModOrder, Mono, PolyRing, Term, Vector};

/// A reduced Gröbner basis (monic, interreduced, sorted by increasing lead).
pub fn groebner(ring: &PolyRing, shifts: &[i32], ord: ModOrder, gens: &[Vector]) -> Vec<Vector> {
    let mut eng = Engine::new(ring, shifts, ord);
    eng.run(gens);
    eng.finish()
}

/// Full reduction of `v` modulo `basis` (which must be a Gröbner basis for
/// the remainder to be canonical).
pub fn normal_form(ring: &PolyRing, ord: ModOrder, v: &Vector, basis: &[Vector]) -> Vector {
    let index = LeadIndex::new(basis);
    reduce_with(ring, ord, v, basis, &index, None)
}

/// Lead-term lookup grouped by position.
pub(crate) struct LeadIndex {
    by_pos: Vec<Vec<usize>>,
}

impl LeadIndex {
    pub(crate) fn new(basis: &[Vector]) -> Self {
        let mut idx = LeadIndex { by_pos: Vec::new() };
        for (i, g) in basis.iter().enumerate() {
            idx.push(i, g);
        }
        idx
    }

    fn push(&mut self, i: usize, g: &Vector) {
        if let Some(t) = g.lead() {
            let p = t.pos as usize;
            if self.by_pos.len() <= p {
                self.by_pos.resize(p + 1, Vec::new());
            }
            self.by_pos[p].push(i);
        }
    }

    #[inline]
    fn find(&self, basis: &[Vector], t: &Term, skip: Option<usize>) -> Option<usize> {
        let list = self.by_pos.get(t.pos as usize)?;
        list.iter().copied().find(|&i| {
            Some(i) != skip && basis[i].lead().is_some_and(|l| l.mono.divides(&t.mono))
        })
    }
}

pub(crate) fn reduce_with(
    ring: &PolyRing,
    ord: ModOrder,
    v: &Vector,
    basis: &[Vector],
    index: &LeadIndex,
    skip: Option<usize>,
) -> Vector {
    let f = ring.field();
    let mut rem: Vec<Term> = Vec::new();
    let mut p = v.clone();
    loop {
        let Some(t) = p.lead().copied() else { break };
        match index.find(basis, &t, skip) {
            Some(i) => {
                let g = &basis[i];
                let gl = g.lead().unwrap();
                let c = f.mul(t.coef, f.inv(gl.coef));
                p = p.add_mul(ring, ord, f.neg(c), &t.mono.div(&gl.mono), g);
            }
            None => {
                rem.push(t);
                p = p.slice_from(1);
            }
        }
    }
    Vector::from_sorted(rem)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    live: bool,
}

enum Item {
    Input(usize),
    Pair(usize),
}

struct Engine<'a> {
    ring: &'a PolyRing,
    shifts: &'a [i32],
    ord: ModOrder,
    basis: Vec<Vector>,
    active: Vec<bool>,
    index: LeadIndex,
    pairs: Vec<Pair>,
    queue: BinaryHeap<Reverse<(i64, u64, usize, bool)>>,
    seq: u64,
    rank_one: bool,
}

impl<'a> Engine<'a> {
    fn new(ring: &'a PolyRing, shifts: &'a [i32], ord: ModOrder) -> Self {
        Engine {
            ring,
            shifts,
            ord,
            basis: Vec::new(),
            active: Vec::new(),
            index: LeadIndex { by_pos: Vec::new() },
            pairs: Vec::new(),
            queue: BinaryHeap::new(),
            seq: 0,
            rank_one: shifts.len() == 1,
        }
    }

    fn push_item(&mut self, deg: i64, item: Item) {
        self.seq += 1;
        let (id, is_pair) = match item {
            Item::Input(k) => (k, false),
            Item::Pair(k) => (k, true),
        };
        self.queue.push(Reverse((deg, self.seq, id, is_pair)));
    }

    fn run(&mut self, gens: &[Vector]) {
        let inputs: Vec<Vector> = gens
            .iter()
            .map(|g| g.reorder(self.ring, self.ord))
            .filter(|g| !g.is_zero())
            .collect();
        for (k, g) in inputs.iter().enumerate() {
            let d = g.degree(self.shifts).unwrap() as i64;
            self.push_item(d, Item::Input(k));
        }
        while let Some(Reverse((_, _, id, is_pair))) = self.queue.pop() {
            let poly = if is_pair {
                let pr = &self.pairs[id];
                if !pr.live {
                    continue;
                }
                self.spoly(pr.i, pr.j, &pr.lcm)
            } else {
                inputs[id].clone()
            };
            let r = reduce_with(self.ring, self.ord, &poly, &self.basis, &self.index, None);
            if !r.is_zero() {
                self.add(r.make_monic(self.ring));
            }
        }
    }

    fn spoly(&self, i: usize, j: usize, lcm: &Mono) -> Vector {
        let (gi, gj) = (&self.basis[i], &self.basis[j]);
        let mi = lcm.div(&gi.lead().unwrap().mono);
        let mj = lcm.div(&gj.lead().unwrap().mono);
        let a = gi.mul_term(self.ring, &mi, 1);
        a.add_mul(self.ring, self.ord, self.ring.field().neg(1), &mj, gj)
    }

    fn add(&mut self, h: Vector) {
        let t = self.basis.len();
        let hl = *h.lead().unwrap();
        let pos = hl.pos;

        // Candidate pairs (g, h) and the Gebauer–Möller filtering.
        let mut cands: Vec<(usize, Mono, bool)> = Vec::new();
        for (i, g) in self.basis.iter().enumerate() {
            if !self.active[i] {
                continue;
            }
            let gl = g.lead().unwrap();
            if gl.pos != pos {
                continue;
            }
            let coprime = self.rank_one && gl.mono.is_coprime(&hl.mono);
            cands.push((i, self.ring.lcm(&gl.mono, &hl.mono), coprime));
        }
        let mut kept: Vec<(usize, Mono, bool)> = Vec::new();
        for k in 0..cands.len() {
            let (_, l, coprime) = cands[k];
            let dominated = cands[k + 1..].iter().any(|c| c.1.divides(&l))
                || kept.iter().any(|c| c.1.divides(&l));
            if coprime || !dominated {
                kept.push(cands[k]);
            }
        }

        // Old pairs made redundant by h.
        for pr in self.pairs.iter_mut().filter(|p| p.live) {
            if self.basis[pr.i].lead().unwrap().pos != pos || !hl.mono.divides(&pr.lcm) {
                continue;
            }
            let li = self.ring.lcm(&self.basis[pr.i].lead().unwrap().mono, &hl.mono);
            let lj = self.ring.lcm(&self.basis[pr.j].lead().unwrap().mono, &hl.mono);
            if li != pr.lcm && lj != pr.lcm {
                pr.live = false;
            }
        }

        for (i, g) in self.basis.iter().enumerate() {
            if self.active[i] {
                let gl = g.lead().unwrap();
                if gl.pos == pos && hl.mono.divides(&gl.mono) {
                    self.active[i] = false;
                }
            }
        }

        self.index.push(t, &h);
        self.basis.push(h);
        self.active.push(true);

        for (i, l, coprime) in kept {
            if coprime {
                continue;
            }
            let id = self.pairs.len();
            self.pairs.push(Pair {
                i,
                j: t,
                lcm: l,
                live: true,
            });
            let d = l.deg() as i64 + self.shifts[pos as usize] as i64;
            self.push_item(d, Item::Pair(id));
        }
    }

    fn finish(self) -> Vec<Vector> {
        let Engine {
            ring, ord, basis, ..
        } = self;
        // Minimal lead terms.
        let mut keep: Vec<usize> = Vec::new();
        for (i, g) in basis.iter().enumerate() {
            let gl = g.lead().unwrap();
            let redundant = basis.iter().enumerate().any(|(j, o)| {
                let ol = o.lead().unwrap();
                j != i
                    && ol.pos == gl.pos
                    && ol.mono.divides(&gl.mono)
                    && (ol.mono != gl.mono || j < i)
            });
            if !redundant {
                keep.push(i);
            }
        }
        let minimal: Vec<Vector> = keep.iter().map(|&i| basis[i].clone()).collect();
        let index = LeadIndex::new(&minimal);
        let mut out: Vec<Vector> = (0..minimal.len())
            .map(|i| {
                let g = &minimal[i];
                let head = Vector::from_sorted(vec![*g.lead().unwrap()]);
                let tail = reduce_with(ring, ord, &g.slice_from(1), &minimal, &index, Some(i));
                head.add(ring, ord, &tail).make_monic(ring)
            })
            .collect();
        out.sort_by(|a, b| {
            let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
            ord.cmp(ring, &x.mono, x.pos, &y.mono, y.pos)
        });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Poly};

    fn ideal(ring: &PolyRing, gens: &[&str]) -> Vec<Vector> {
        gens.iter()
            .map(|s| Vector::from_poly_at(ring, ModOrder::POT, &parse_poly(ring, s).unwrap(), 0))
            .collect()
    }

    fn show(ring: &PolyRing, gb: &[Vector]) -> Vec<String> {
        gb.iter().map(|g| g.component(ring, 0).fmt(ring)).collect()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = PolyRing::standard(101, &["x", "z"]).unwrap();
        let gb = groebner(&r, &[0], ModOrder::POT, &ideal(&r, &["x^2", "x*z"]));
        assert_eq!(show(&r, &gb), vec!["x*z", "x^2"]);
    }

    #[test]
    fn duplicate_and_zero_generators_pruned() {
        let r = PolyRing::standard(101, &["x", "z"]).unwrap();
        let gb = groebner(&r, &[0], ModOrder::POT, &ideal(&r, &["z^2", "x*z^2 - z^2*x"]));
        assert_eq!(show(&r, &gb), vec!["z^2"]);
    }

    #[test]
    fn cube_of_maximal_ideal() {
        let r = PolyRing::standard(101, &["x", "z"]).unwrap();
        let gb = groebner(
            &r,
            &[0],
            ModOrder::POT,
            &ideal(&r, &["(x+z)^3", "x^3", "x^2*z", "x*z^2 + x^3", "z^3 + x*z^2"]),
        );
        assert_eq!(gb.len(), 4);
        assert!(gb.iter().all(|g| g.len() == 1));
    }

    #[test]
    fn normal_forms() {
        let r = PolyRing::standard(101, &["x", "z"]).unwrap();
        let m2 = groebner(&r, &[0], ModOrder::POT, &ideal(&r, &["x^2", "x*z", "z^2"]));
        let v = |s: &str| Vector::from_poly_at(&r, ModOrder::POT, &parse_poly(&r, s).unwrap(), 0);
        assert!(normal_form(&r, ModOrder::POT, &v("x^3"), &m2).is_zero());
        let z2 = groebner(&r, &[0], ModOrder::POT, &ideal(&r, &["z^2"]));
        assert_eq!(normal_form(&r, ModOrder::POT, &v("z"), &z2), v("z"));
        assert_eq!(normal_form(&r, ModOrder::POT, &v("x^2+z^2"), &z2), v("x^2"));
        let _ = Poly::zero();
    }

    #[test]
    fn twisted_cubic_degrevlex() {
        // 2x2 minors of [[a,b,c],[b,c,d]]: a classic basis of three quadrics.
        let r = PolyRing::standard(101, &["a", "b", "c", "d"]).unwrap();
        let gb = groebner(
            &r,
            &[0],
            ModOrder::POT,
            &ideal(&r, &["a*c - b^2", "a*d - b*c", "b*d - c^2"]),
        );
        assert_eq!(gb.len(), 3);
        let lex = r.with_order(crate::poly::MonoOrder::Lex);
        let gbl = groebner(
            &lex,
            &[0],
            ModOrder::POT,
            &ideal(&lex, &["a*c - b^2", "a*d - b*c", "b*d - c^2"]),
        );
        assert!(gbl.len() >= 3);
    }
}

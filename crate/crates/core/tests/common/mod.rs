//! Rings, ideals and random homogeneous data shared by the integration tests.

#![allow(dead_code)]

use std::sync::Arc;

use cicalc::ci_ring::{CIRing, Ideal};
use cicalc::poly::{parse_poly, Poly, PolyRing};
use cicalc::resolve::Module;

pub fn ring(vars: &[&str], relations: &[&str]) -> Arc<CIRing> {
    let r = Arc::new(PolyRing::standard(101, vars).unwrap());
    let f = relations.iter().map(|s| parse_poly(&r, s).unwrap()).collect();
    CIRing::new(r, f).unwrap()
}

/// `k[x,z]/(z^2)`.
pub fn a1() -> Arc<CIRing> {
    ring(&["x", "z"], &["z^2"])
}

/// `k[x,z1,z2]/(z1^2,z2^2)`.
pub fn a2() -> Arc<CIRing> {
    ring(&["x", "z1", "z2"], &["z1^2", "z2^2"])
}

pub fn poly(a: &CIRing, s: &str) -> Poly {
    parse_poly(a.ring(), s).unwrap()
}

pub fn ideal(a: &Arc<CIRing>, gens: &[&str]) -> Arc<Ideal> {
    Ideal::new(a.clone(), gens.iter().map(|s| poly(a, s)).collect()).unwrap()
}

pub fn cyclic(a: &Arc<CIRing>, gens: &[Poly]) -> Module {
    Module::cyclic(a.clone(), gens).unwrap()
}

/// The homogeneous polynomial of degree `deg` whose coefficients on the
/// monomials of that degree, in enumeration order, are `coeffs` (cycled).
pub fn homogeneous(r: &PolyRing, deg: u32, coeffs: &[u32]) -> Poly {
    let terms = r
        .monomials_of_degree(deg)
        .into_iter()
        .zip(coeffs.iter().cycle())
        .filter(|(_, &c)| c != 0)
        .map(|(m, &c)| (m, c))
        .collect();
    Poly::from_terms(r, terms)
}

/// The m-primary ideals used across the fixtures of `k[x,z]/(z^2)`.
pub fn a1_ideals(a: &Arc<CIRing>) -> Vec<Arc<Ideal>> {
    vec![ideal(a, &["x", "z"]), ideal(a, &["x"]), ideal(a, &["x^2", "x*z"])]
}

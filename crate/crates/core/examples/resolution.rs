//! Minimal free resolution of the residue field over `k[x,z1,z2]/(z1^2,z2^2)`
//! and the lifted operators on it.

use std::sync::Arc;

use cicalc::ci_ring::CIRing;
use cicalc::operators::eisenbud_operators;
use cicalc::poly::{parse_poly, PolyRing};
use cicalc::resolve::{depth, minimal_resolution, projective_dimension, Module};

fn main() {
    let r = Arc::new(PolyRing::standard(101, &["x", "z1", "z2"]).unwrap());
    let f = ["z1^2", "z2^2"].iter().map(|s| parse_poly(&r, s).unwrap()).collect();
    let a = CIRing::new(r, f).unwrap();
    let k = Module::residue_field(a.clone());

    let res = minimal_resolution(&k, 6);
    println!("betti numbers: {:?}", res.betti());
    for (i, degree, count) in res.graded_betti() {
        println!("  F_{} has {} generator(s) in degree {}", i, count, degree);
    }
    println!("exact: {}, no units: {}", res.is_exact(), res.has_no_units());
    println!("depth {}, pd {:?}", depth(&k), projective_dimension(&k));

    let ops = eisenbud_operators(&res);
    println!("{} operators", ops.codim());
    println!("lift identity: {}", ops.lift_identity_holds());
    println!("commute with the differential: {}", ops.commutes_with_differential());
}

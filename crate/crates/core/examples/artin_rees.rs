//! Strong Artin-Rees exponents for the syzygy filtrations of a resolution.

use cicalc::artin_rees::strong_ar_exponent;
use cicalc::cli::{fixtures, Instance};

fn main() {
    for name in ["a1-m1-maximal", "a1-m1-parameter", "a2-m2-maximal"] {
        let inst = Instance::build(&fixtures::spec(name).unwrap()).unwrap();
        let rep = strong_ar_exponent(&inst.module, &inst.ideal, 4, 8).unwrap();
        println!("{}: h = {} (verified {}, within reg + 1: {})", name, rep.h, rep.verified(), rep.within_reg_bounds());
        for l in &rep.levels {
            println!("  level {}: exponent {}, reg {}", l.level, l.exponent, l.reg);
        }
    }
}

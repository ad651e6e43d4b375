//! Maximal Cohen-Macaulay approximation of `M/xM` and the behaviour of the
//! growth degrees when passing to it.

use cicalc::asymptotics::{psi_under_modx, Windows};
use cicalc::cli::{fixtures, Instance};
use cicalc::resolve::{mcm_approx, minimal_resolution};

fn main() {
    for name in ["a1-m1-maximal", "a2-m2-maximal"] {
        let inst = Instance::build(&fixtures::spec(name).unwrap()).unwrap();
        let x = inst.element().unwrap();
        let a = mcm_approx(&inst.module, std::slice::from_ref(&x)).unwrap();
        println!("{} modulo {}:", name, x.fmt(inst.ring.ring()));
        println!("  approximation Betti {:?}, depth {}", minimal_resolution(&a.approximation, 6).betti(), a.depth);
        println!("  surjective {}, kernel of finite pd {}", a.surjective, a.kernel_finite_pd);
        let cmp = psi_under_modx(&inst.module, &inst.ideal, &x, Windows::default()).unwrap();
        println!("  r(M) = {}, formula holds: {}", cmp.r_m, cmp.holds());
    }
}

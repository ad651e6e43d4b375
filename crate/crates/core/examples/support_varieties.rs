//! Support varieties, complexity and the varieties of powers of an ideal.

use cicalc::ci_ring::Ideal;
use cicalc::cli::{fixtures, Instance};
use cicalc::operators::{complexity, ideal_varieties, support_variety, variety_mod_linear, VarietyWindow};
use cicalc::resolve::{syzygy, Module};

fn main() {
    let w = VarietyWindow::default();
    for name in ["a2-m2-maximal", "a2-line-parameter"] {
        let inst = Instance::build(&fixtures::spec(name).unwrap()).unwrap();
        let m = &inst.module;
        let cx = complexity(m, w);
        println!("{}: V(M) = ({}), dim {}", name, cx.variety.fmt_gens().join(", "), cx.variety_dim);
        println!("  Betti {:?}, growth estimate {:?}", cx.betti, cx.betti_estimate);
        let first = support_variety(&syzygy(m, 1), None, w);
        println!("  first syzygy has the same variety: {}", first.same_radical(&cx.variety));
        let x = inst.element().unwrap();
        match variety_mod_linear(m, &x, w) {
            Ok((before, after)) => println!("  unchanged modulo {}: {}", x.fmt(inst.ring.ring()), before.same_radical(&after)),
            Err(e) => println!("  modulo {}: {}", x.fmt(inst.ring.ring()), e),
        }
    }

    let inst = Instance::build(&fixtures::spec("a2-m2-maximal").unwrap()).unwrap();
    let iv = ideal_varieties(&inst.ideal, 3, w);
    for (n, v) in iv.per_power.iter().enumerate() {
        let power = Ideal::new(inst.ring.clone(), inst.ideal.power_gens(n + 1)).unwrap();
        let cx = complexity(&Module::ideal(&power), w);
        println!("V(m^{}) = ({}), complexity {}", n + 1, v.fmt_gens().join(", "), cx.variety_dim);
    }
    println!("stable from n = {}", iv.index);
}

//! Regularity of associated graded modules: Betti and Čech paths, and the
//! sweep over syzygy modules.

use cicalc::blowup::{assoc_graded, local_cohomology_ends, reg_syzygy_sweep};
use cicalc::cli::{fixtures, Instance};

fn main() {
    for name in ["a1-m1-maximal", "a2-m2-maximal", "d2-free-gap"] {
        let inst = Instance::build(&fixtures::spec(name).unwrap()).unwrap();
        let g = assoc_graded(&inst.module, &inst.ideal).unwrap();
        let cech = local_cohomology_ends(&g, 4).unwrap();
        let ends: Vec<String> = cech.ends.iter().map(|d| d.to_string()).collect();
        println!("{}: reg via Betti numbers {}, via local cohomology {}", name, g.regularity(), cech.reg);
        println!("  a_i = end H^i: {}", ends.join(" "));
        let sweep = reg_syzygy_sweep(&inst.module, &inst.ideal, 5).unwrap();
        let regs: Vec<String> = sweep.regs.iter().map(|d| d.to_string()).collect();
        println!("  reg over syzygies 0..5: {} (bounded: {})", regs.join(" "), sweep.bounded);
    }
}

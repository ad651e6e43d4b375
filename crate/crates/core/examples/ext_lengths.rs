//! Lengths of `Ext^i(M, M/I^n M)` and the polynomial degrees of their
//! growth in `n`, for `M = A/(z)` over `A = k[x,z]/(z^2)`.

use cicalc::asymptotics::{ext_length_table, psi_report, Windows};
use cicalc::cli::{fixtures, Instance};

fn main() {
    for name in ["a1-m1-maximal", "a1-m1-parameter"] {
        let inst = Instance::build(&fixtures::spec(name).unwrap()).unwrap();
        let w = Windows::default();
        let table = ext_length_table(&inst.module, &inst.ideal, w.i_max, w.n_max).unwrap();
        println!("{} (rows i, columns n):", name);
        print!("{}", table.to_csv());
        let rep = psi_report(&table, w).unwrap();
        let psi: Vec<String> = rep.psi.iter().map(|d| d.to_string()).collect();
        println!("psi_i for i >= 1: {}", psi.join(" "));
        println!("r0 = {}, r1 = {}, r = {}\n", rep.r0, rep.r1, rep.r);
    }
}

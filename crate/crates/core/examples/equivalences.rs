//! The conditions equivalent to `r^I(M) = -inf` for maximal Cohen-Macaulay
//! modules, evaluated on the built-in fixtures.

use cicalc::asymptotics::{check_equivalences, EquivalenceOptions};
use cicalc::cli::{fixtures, Instance};

fn main() {
    println!("{:<32} r=-inf rows unif. varieties tor  agree", "fixture");
    for (name, spec) in fixtures::suite() {
        let inst = Instance::build(&spec).unwrap();
        match check_equivalences(&inst.module, &inst.ideal, EquivalenceOptions::default()) {
            Ok(eq) => {
                let v = eq.values();
                println!(
                    "{:<32} {:<6} {:<4} {:<5} {:<9} {:<4} {}",
                    name, v[0], v[1], v[2], v[3], v[4], eq.agree()
                );
            }
            Err(e) => println!("{:<32} skipped: {}", name, e),
        }
    }
}

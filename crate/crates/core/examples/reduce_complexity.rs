//! Reducing complexity by one with a kernel of a degree-two operator.

use cicalc::cli::{fixtures, Instance};
use cicalc::operators::VarietyWindow;
use cicalc::resolve::reduce_complexity;

fn main() {
    let inst = Instance::build(&fixtures::spec("a2-line-maximal").unwrap()).unwrap();
    let c = reduce_complexity(&inst.module, VarietyWindow::default(), 0).unwrap();
    println!("operator coefficients {:?} (seed {})", c.coefficients, c.seed);
    println!("complexity {} -> {}", c.original_complexity, c.kernel_complexity);
    println!("kernel Betti   {:?}", c.kernel_betti);
    println!("b_(i+2) - b_i  {:?}", c.expected_betti);
    println!("syzygy compatible: {}", c.syzygy_compatible);
}

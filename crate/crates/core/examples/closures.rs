//! Ratliff-Rush closures of powers of a non-normal ideal and the bound on
//! where they stop differing from the powers.

use cicalc::blowup::{end_h0_via_power, find_superficial, ratliff_rush, superficial_window};
use cicalc::cli::{fixtures, Instance};

fn main() {
    let inst = Instance::build(&fixtures::spec("d2-free-gap").unwrap()).unwrap();
    let r = inst.ring.ring();
    let gens: Vec<String> = inst.ideal.gens().iter().map(|g| g.fmt(r)).collect();
    println!("I = ({})", gens.join(", "));

    let chain = ratliff_rush(&inst.module, &inst.ideal, 4).unwrap();
    println!("closure defects for I^1..I^5: {:?}", chain.defects());
    println!("last power with a nontrivial closure, shifted by one: {}", chain.end_h0);

    let modules = std::slice::from_ref(&inst.module);
    let window = superficial_window(&inst.ideal, modules, 4).unwrap();
    let sup = find_superficial(&inst.ideal, modules, window, 0).unwrap();
    println!("superficial element {} (checked on n in {:?})", sup.element.fmt(r), window);
    let bound = end_h0_via_power(&inst.module, &inst.ideal, &sup.element, 4).unwrap();
    println!(
        "b = {}, m = {}, t = {}: {} <= {} holds: {}",
        bound.b, bound.power, bound.t, bound.lhs, bound.rhs, bound.holds
    );
}

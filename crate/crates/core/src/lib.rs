//! Asymptotic homological invariants over graded complete intersections.

pub mod poly;
pub mod ci_ring;
pub mod resolve;
pub mod operators;
pub mod asymptotics;
pub mod blowup;
pub mod artin_rees;
pub mod cli;

//! Built-in instances shipped with the crate.

use super::{parse_instance, InstanceSpec};

const FIXTURES: &[(&str, &str)] = &[
    ("a1-m1-maximal", include_str!("../../fixtures/a1-m1-maximal.toml")),
    ("a1-m1-parameter", include_str!("../../fixtures/a1-m1-parameter.toml")),
    ("a1-free-maximal", include_str!("../../fixtures/a1-free-maximal.toml")),
    ("a1-m1-maximal-times-parameter", include_str!("../../fixtures/a1-m1-maximal-times-parameter.toml")),
    ("a2-m2-maximal", include_str!("../../fixtures/a2-m2-maximal.toml")),
    ("a2-line-parameter", include_str!("../../fixtures/a2-line-parameter.toml")),
    ("a2-m2-maximal-times-parameter", include_str!("../../fixtures/a2-m2-maximal-times-parameter.toml")),
    ("a2-line-maximal", include_str!("../../fixtures/a2-line-maximal.toml")),
    ("d2-free-maximal", include_str!("../../fixtures/d2-free-maximal.toml")),
    ("d2-free-parameter-squares", include_str!("../../fixtures/d2-free-parameter-squares.toml")),
    ("d2-free-gap", include_str!("../../fixtures/d2-free-gap.toml")),
];

/// Instances in dimension 2, used for the power-ideal bound.
pub const DIMENSION_TWO: &[&str] = &["d2-free-maximal", "d2-free-parameter-squares", "d2-free-gap"];

pub fn names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|(n, _)| *n)
}

pub fn text(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn spec(name: &str) -> Option<InstanceSpec> {
    text(name).map(|t| parse_instance(t).expect("shipped fixtures parse"))
}

/// The one-dimensional suite: `c` in {1, 2}, complexity 0 to 2, and
/// maximal, parameter and maximal-times-parameter ideals.
pub fn suite() -> Vec<(&'static str, InstanceSpec)> {
    names()
        .filter(|n| !DIMENSION_TWO.contains(n))
        .map(|n| (n, spec(n).unwrap()))
        .collect()
}

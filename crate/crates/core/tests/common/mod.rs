#![allow(dead_code)]

use forests_core::dsl::parse_family;
use forests_core::family::build_family;
use forests_core::graph::FoliationSpec;

/// Families with a closed-form or well-known structure, used across suites.
pub const FAMILIES: [&str; 8] = [
    "C(n;1)",
    "C(n;1,2)",
    "GP(n,2)",
    "I(n,2,3)",
    "SW(n;[1],[2])",
    "Y(n;1,1,1)",
    "H(n;1,1,1,1)",
    "T(n,3)",
];

pub fn spec(text: &str) -> FoliationSpec {
    build_family(&parse_family(text).unwrap()).unwrap()
}

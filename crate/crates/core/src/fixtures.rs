//! Bundled demand functions used throughout the examples and tests.

use crate::DemandFunction;

pub const GF3_JSON: &str = include_str!("../fixtures/gf3.json");
pub const ARITHSUM_JSON: &str = include_str!("../fixtures/arithsum.json");
pub const GF2SUM_JSON: &str = include_str!("../fixtures/gf2sum.json");

/// Three-valued running example over GF(3).
pub fn gf3() -> DemandFunction {
    DemandFunction::load(GF3_JSON).expect("bundled fixture is valid")
}

/// `x1 + x2 + x3` over the integers with binary sources.
pub fn arithmetic_sum() -> DemandFunction {
    DemandFunction::load(ARITHSUM_JSON).expect("bundled fixture is valid")
}

/// `x1 + x2 + x3 mod 2`.
pub fn gf2_sum() -> DemandFunction {
    DemandFunction::load(GF2SUM_JSON).expect("bundled fixture is valid")
}

/// All bundled fixtures with their short names.
pub fn all() -> Vec<(&'static str, DemandFunction)> {
    vec![
        ("gf3", gf3()),
        ("arithsum", arithmetic_sum()),
        ("gf2sum", gf2_sum()),
    ]
}

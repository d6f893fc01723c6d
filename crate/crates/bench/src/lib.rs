//! Benchmark fixtures shared by the criterion targets.

use lndfilt::families::{danielewski_ctx, new_family_p_ctx, new_family_q_ctx, FamilyInstance};
use lndfilt::poly::parse::parse_polynomial;
use lndfilt::GbConfig;

/// `x^2 y = (y^2 - x z)^2` with its canonical derivation.
pub fn toy() -> FamilyInstance {
    let p = parse_polynomial("S^2", &new_family_p_ctx()).expect("valid");
    let q = parse_polynomial("Y^2", &new_family_q_ctx()).expect("valid");
    FamilyInstance::new_family(2, 1, &p, &q, &GbConfig::default()).expect("valid instance")
}

pub fn danielewski(n: u32, p: &str) -> FamilyInstance {
    let p = parse_polynomial(p, &danielewski_ctx()).expect("valid");
    FamilyInstance::danielewski(n, &p, &GbConfig::default()).expect("valid instance")
}

//! Example data shipped with the crate.

use crate::delzant::DelzantPolytope;
use crate::exact::Rational;
use crate::fixedpoints::FixedPointSet;
use crate::io::{parse_fixed_points, parse_polytope, AbstractData};

pub const SIMPLEX4_JSON: &str = include_str!("../data/polytopes/simplex4.json");
pub const CUBE4_JSON: &str = include_str!("../data/polytopes/cube4.json");
pub const P2XP2_JSON: &str = include_str!("../data/polytopes/p2xp2.json");
pub const CP4_JSON: &str = include_str!("../data/fixtures/cp4.json");
pub const FAKE_B2_GT_B4_JSON: &str = include_str!("../data/fixtures/fake_b2_gt_b4.json");
pub const FAKE_B2_3_B4_2_JSON: &str = include_str!("../data/fixtures/fake_b2_3_b4_2.json");

/// The unit 4-simplex (moment polytope of CP⁴).
pub fn simplex4() -> DelzantPolytope {
    parse_polytope(SIMPLEX4_JSON).expect("bundled simplex4.json")
}

/// The unit 4-cube (moment polytope of (CP¹)⁴).
pub fn cube4() -> DelzantPolytope {
    parse_polytope(CUBE4_JSON).expect("bundled cube4.json")
}

/// Δ² × Δ² (moment polytope of CP² × CP²).
pub fn p2xp2() -> DelzantPolytope {
    parse_polytope(P2XP2_JSON).expect("bundled p2xp2.json")
}

/// The three bundled polytopes with their file names.
pub fn polytopes() -> Vec<(&'static str, DelzantPolytope)> {
    vec![
        ("simplex4.json", simplex4()),
        ("cube4.json", cube4()),
        ("p2xp2.json", p2xp2()),
    ]
}

/// CP⁴ under ξ = (1,2,4,8), normalized to max H = 0.
pub fn cp4() -> FixedPointSet {
    parse_fixed_points(CP4_JSON).expect("bundled cp4.json").set
}

/// CP⁴ with the moment values of the unit simplex, H = (0,1,2,4,8).
pub fn cp4_unnormalized() -> FixedPointSet {
    let mut s = cp4();
    for p in &mut s.points {
        p.moment = &p.moment + &Rational::from(8);
    }
    s
}

pub fn fake_b2_gt_b4() -> AbstractData {
    parse_fixed_points(FAKE_B2_GT_B4_JSON).expect("bundled fake_b2_gt_b4.json")
}

pub fn fake_b2_3_b4_2() -> AbstractData {
    parse_fixed_points(FAKE_B2_3_B4_2_JSON).expect("bundled fake_b2_3_b4_2.json")
}

/// Inconsistent synthetic fixtures for the contradiction detector.
pub fn synthetic_fixtures() -> Vec<(&'static str, AbstractData)> {
    vec![
        ("fake_b2_gt_b4.json", fake_b2_gt_b4()),
        ("fake_b2_3_b4_2.json", fake_b2_3_b4_2()),
    ]
}

//! Specs shipped with the crate.

use crate::fusioncat::{Category, FusionError};

pub const NAMES: [&str; 10] = [
    "trivial",
    "vec_z2",
    "semion",
    "vec_z3",
    "fibonacci",
    "yang_lee",
    "ising",
    "ty_z2z2_plus",
    "ty_z2z2_minus",
    "rep_s3",
];

/// Bundled specs whose canonical pivotal structure exists (all but `yang_lee`).
pub const PSEUDO_UNITARY: [&str; 9] = [
    "trivial",
    "vec_z2",
    "semion",
    "vec_z3",
    "fibonacci",
    "ising",
    "ty_z2z2_plus",
    "ty_z2z2_minus",
    "rep_s3",
];

pub fn spec_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "trivial" => include_str!("../specs/trivial.json"),
        "vec_z2" => include_str!("../specs/vec_z2.json"),
        "semion" => include_str!("../specs/semion.json"),
        "vec_z3" => include_str!("../specs/vec_z3.json"),
        "fibonacci" => include_str!("../specs/fibonacci.json"),
        "yang_lee" => include_str!("../specs/yang_lee.json"),
        "ising" => include_str!("../specs/ising.json"),
        "ty_z2z2_plus" => include_str!("../specs/ty_z2z2_plus.json"),
        "ty_z2z2_minus" => include_str!("../specs/ty_z2z2_minus.json"),
        "rep_s3" => include_str!("../specs/rep_s3.json"),
        _ => return None,
    })
}

pub fn category(name: &str) -> Result<Category, FusionError> {
    let text =
        spec_text(name).ok_or_else(|| FusionError::Spec(format!("no bundled spec `{name}`")))?;
    Category::from_json(text)
}

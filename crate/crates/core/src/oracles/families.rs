//! Named constructors for the bundled families, with pivotal data attached.

use super::{
    attach_pivotal, build_pointed, build_rep_category, build_tambara_yamagami, chi_z2, chi_z2z2,
    pointed_cocycle, s3_irreps, solve_pentagon_rank2, AbelianGroup, OracleError,
};
use crate::exactnum::{sqrt2, Cyc};
use crate::fusioncat::Category;

/// Names accepted by [`family`].
pub const FAMILIES: [&str; 10] = [
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

fn renamed(mut cat: Category, name: &str) -> Category {
    cat.name = name.to_string();
    cat
}

/// `Vec_ω(Z/n)` with the cocycle `ω_p`, pivotal data attached.
pub fn pointed(n: u32, p: u32) -> Result<Category, OracleError> {
    if n == 0 {
        return Err(OracleError::Precondition(
            "group order must be positive".into(),
        ));
    }
    let p = p % n;
    let conductor = if p == 0 { n } else { n * n };
    let cat = build_pointed(n, &pointed_cocycle(n, p), conductor)?;
    let name = if p == 0 {
        format!("vec_z{n}")
    } else {
        format!("vec_z{n}_w{p}")
    };
    attach_pivotal(renamed(cat, &name))
}

pub fn family(name: &str) -> Result<Category, OracleError> {
    let half = Cyc::from_frac(1, 2);
    let cat = match name {
        "trivial" => renamed(pointed(1, 0)?, "trivial"),
        "vec_z2" => pointed(2, 0)?,
        "semion" => renamed(pointed(2, 1)?, "semion"),
        "vec_z3" => pointed(3, 0)?,
        "fibonacci" | "yang_lee" => {
            let sols = solve_pentagon_rank2()?;
            let cat = sols
                .into_iter()
                .find(|c| c.name == name)
                .ok_or_else(|| OracleError::Precondition(format!("no {name} solution")))?;
            attach_pivotal(cat)?
        }
        "ising" => {
            let tau = sqrt2() * half;
            attach_pivotal(build_tambara_yamagami(
                &AbelianGroup::new(&[2]),
                &chi_z2,
                &tau,
                8,
                "ising",
            )?)?
        }
        "ty_z2z2_plus" | "ty_z2z2_minus" => {
            let tau = if name.ends_with("plus") { half } else { -half };
            attach_pivotal(build_tambara_yamagami(
                &AbelianGroup::new(&[2, 2]),
                &chi_z2z2,
                &tau,
                4,
                name,
            )?)?
        }
        "rep_s3" => attach_pivotal(build_rep_category(
            "rep_s3",
            &s3_irreps()?,
            &["1", "sgn", "std"],
            3,
        )?)?,
        other => {
            return Err(OracleError::Precondition(format!(
                "unknown family `{other}`"
            )))
        }
    };
    Ok(cat)
}

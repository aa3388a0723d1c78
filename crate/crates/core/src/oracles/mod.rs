//! Independent ground truth: character-theoretic indicators of finite
//! groups, a brute-force tensor-power oracle, and constructors for the
//! bundled category families.

mod builders;
mod families;
mod groups;

use thiserror::Error;

use crate::exactnum::ExactError;
use crate::fusioncat::FusionError;

pub use builders::{
    attach_pivotal, build_pointed, build_rep_category, build_tambara_yamagami, chi_z2, chi_z2z2,
    pointed_cocycle, solve_pentagon_rank2, AbelianGroup,
};
pub use families::{family, pointed, FAMILIES};
pub use groups::{
    brute_force_indicator, char_indicator, d4_irreps, q8_irreps, s3_irreps, CharacterTable,
    MatrixRep, BRUTE_FORCE_GUARD,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("size guard exceeded: {0}")]
    Guard(String),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

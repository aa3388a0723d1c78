//! Exact computation of higher Frobenius-Schur indicators of objects in
//! skeletal pivotal fusion categories.

pub mod bundled;
pub mod exactnum;
pub mod fusioncat;
pub mod homcalc;
pub mod indicators;
pub mod matrix;
pub mod oracles;

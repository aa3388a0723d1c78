//! Frobenius-Perron and categorical dimensions.

use super::{Category, FusionError, FusionRing, Label, ObjectExpr};
use crate::exactnum::Cyc;
use crate::homcalc::{Calc, HomError, Side, Word};

const TOL: f64 = 1e-13;
const MAX_ITER: usize = 100_000;

/// Largest eigenvalue of `ρ_V = Σ k_i N_{a_i}` by power iteration.
///
/// Iterates on `ρ_V + I`, whose Perron root is strictly dominant even when
/// `ρ_V` is a permutation matrix.
pub fn fp_dimension(ring: &FusionRing, v: &ObjectExpr) -> Result<f64, FusionError> {
    if v.is_zero() {
        return Err(FusionError::ZeroObject);
    }
    let r = ring.rank();
    let mut m = vec![vec![0f64; r]; r];
    for &(a, k) in v.terms() {
        for (c, row) in ring.fusion_matrix(a).iter().enumerate() {
            for (b, &n) in row.iter().enumerate() {
                m[c][b] += f64::from(k) * f64::from(n);
            }
        }
    }
    for (i, row) in m.iter_mut().enumerate() {
        row[i] += 1.0;
    }
    let mut x = vec![1.0; r];
    let mut lam = 0.0;
    for _ in 0..MAX_ITER {
        let y: Vec<f64> = m
            .iter()
            .map(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum())
            .collect();
        let norm = y.iter().fold(0f64, |a, b| a.max(b.abs()));
        if norm == 0.0 {
            return Err(FusionError::ZeroObject);
        }
        let next: Vec<f64> = y.iter().map(|v| v / norm).collect();
        let moved = next
            .iter()
            .zip(&x)
            .fold(0f64, |a, (p, q)| a.max((p - q).abs()));
        let done = (norm - lam).abs() <= TOL * norm && moved <= TOL;
        lam = norm;
        x = next;
        if done {
            return Ok(lam - 1.0);
        }
    }
    Err(FusionError::Spec(format!(
        "power iteration did not converge in {MAX_ITER} steps"
    )))
}

pub fn fp_dimension_simple(ring: &FusionRing, a: Label) -> Result<f64, FusionError> {
    fp_dimension(ring, &ObjectExpr::simple(a))
}

fn hom(e: HomError) -> FusionError {
    match e {
        HomError::Fusion(f) => f,
        other => FusionError::Spec(other.to_string()),
    }
}

/// `ptr_r(id_a) · ptr_l(id_a)`, which does not depend on the pivotal choice.
pub fn normed_square(cat: &Category, a: Label) -> Result<Cyc, FusionError> {
    let calc = Calc::new(cat);
    normed_square_with(&calc, a)
}

pub(crate) fn normed_square_with(calc: &Calc, a: Label) -> Result<Cyc, FusionError> {
    calc.category().pivotal()?;
    let id = calc.identity(&Word::Leaf(a));
    let r = calc.ptr(&id, Side::R).map_err(hom)?;
    let l = calc.ptr(&id, Side::L).map_err(hom)?;
    Ok(r * l)
}

pub fn global_dimension(cat: &Category) -> Result<Cyc, FusionError> {
    let calc = Calc::new(cat);
    let mut acc = Cyc::zero();
    for a in 0..cat.rank() {
        acc = acc + normed_square_with(&calc, a)?;
    }
    Ok(acc)
}

/// `(dim(C) = FPdim(C) within 1e-9, |dim(C) − FPdim(C)|)`.
pub fn is_pseudo_unitary(cat: &Category) -> Result<(bool, f64), FusionError> {
    let (re, im) = global_dimension(cat)?.embed();
    let mut fp = 0.0;
    for a in 0..cat.rank() {
        fp += fp_dimension_simple(&cat.ring, a)?.powi(2);
    }
    let gap = (re - fp).hypot(im);
    Ok((gap < 1e-9, gap))
}

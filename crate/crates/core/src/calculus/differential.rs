//! The normalized differential `Φ = F_f′(0)/f′(0)` by Richardson-extrapolated differences.

use num_complex::Complex64 as C64;

use super::apply::{apply_series, DEFAULT_SERIES_MAX_TERMS};
use super::discmap::DiscMap;
use super::jet::eval_jet;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, RectMatrix};

/// `|f(0)|` above this means the map does not fix the origin.
pub const ORIGIN_TOL: f64 = 1e-12;
/// `|f′(0)|` below this is treated as zero.
pub const ALPHA_TOL: f64 = 1e-8;

fn alpha(f: &DiscMap) -> Result<C64> {
    let jet = eval_jet(f, C64::new(0.0, 0.0), 2)?;
    if jet.value().norm() > ORIGIN_TOL {
        return Err(Error::Precondition(format!(
            "the map must fix the origin, f(0) = {}",
            jet.value()
        )));
    }
    let a = jet.derivative(1);
    if a.norm() < ALPHA_TOL {
        return Err(Error::Precondition(format!(
            "f′(0) = {a} is too small to normalize the differential"
        )));
    }
    Ok(a)
}

fn quotient(f: &DiscMap, v: &CMatrix, h: f64, alpha: C64) -> Result<CMatrix> {
    let tol = 1e-17 * h * v.frobenius_norm().max(1.0);
    let fv = apply_series(f, &v.scale_real(h), tol, DEFAULT_SERIES_MAX_TERMS)?;
    Ok(fv.scale(1.0 / (alpha * h)))
}

fn check_step(h: f64) -> Result<()> {
    if h.is_finite() && h > 0.0 {
        Ok(())
    } else {
        Err(Error::input(format!(
            "step must be positive and finite, got {h}"
        )))
    }
}

/// `Φ(V) ≈ F_f(hV)/(αh)` with `α = f′(0)`, extrapolated as `2·D(h/2) − D(h)`.
pub fn lemma3_normalized_differential(f: &DiscMap, v: &CMatrix, h: f64) -> Result<CMatrix> {
    check_step(h)?;
    let a = alpha(f)?;
    let d1 = quotient(f, v, h, a)?;
    let d2 = quotient(f, v, 0.5 * h, a)?;
    Ok(&d2.scale_real(2.0) - &d1)
}

/// The `n² × n²` matrix of `Φ` in the basis `E_rs`, one column per basis element.
pub fn normalized_differential_matrix(f: &DiscMap, n: usize, h: f64) -> Result<RectMatrix> {
    let cols: Vec<Vec<C64>> = (0..n * n)
        .map(|k| {
            lemma3_normalized_differential(f, &CMatrix::elementary(n, k / n, k % n), h)
                .map(|m| m.vectorize())
        })
        .collect::<Result<_>>()?;
    Ok(RectMatrix::from_row_vectors(&cols)?.transpose())
}

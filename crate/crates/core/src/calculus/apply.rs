//! The matrix functional calculus `A ↦ f(A)`.

use num_complex::Complex64 as C64;

use super::discmap::DiscMap;
use crate::error::{Error, Result};
use crate::fibers::{eigen_structure, JordanRealization, StructureTols};
use crate::linalg::CMatrix;
use crate::spectral::spectral_radius;

/// Default absolute tolerance on the last series term.
pub const DEFAULT_SERIES_TOL: f64 = 1e-14;
/// Hard cap on the number of series terms.
pub const DEFAULT_SERIES_MAX_TERMS: usize = 10_000;

/// How the spectral data of the argument is obtained.
#[derive(Clone, Copy, Debug)]
pub enum MatrixArg<'a> {
    /// Detect eigenvalues and block sizes numerically.
    Raw(&'a CMatrix),
    /// Use the known Jordan data of a realization.
    Realized(&'a JordanRealization),
    /// A matrix with caller-supplied interpolation nodes `(λ, largest block size)`.
    Hinted {
        matrix: &'a CMatrix,
        nodes: &'a [(C64, usize)],
    },
}

impl<'a> From<&'a CMatrix> for MatrixArg<'a> {
    fn from(a: &'a CMatrix) -> Self {
        MatrixArg::Raw(a)
    }
}

impl<'a> From<&'a JordanRealization> for MatrixArg<'a> {
    fn from(r: &'a JordanRealization) -> Self {
        MatrixArg::Realized(r)
    }
}

/// Evaluation route for `F_f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CalculusMethod {
    Exact,
    Series,
}

fn horner(coeffs: &[C64], a: &CMatrix) -> CMatrix {
    let n = a.n();
    let mut acc = CMatrix::scalar(n, *coeffs.last().expect("nonempty coefficients"));
    for &c in coeffs.iter().rev().skip(1) {
        acc = (&acc * a).shift(c);
    }
    acc
}

/// Truncated Taylor series `Σ_{j ≤ N} c_j A^j`.
///
/// Stops once `‖c_N A^N‖_F < tol` and the three latest power norms `‖A^j‖_F` are strictly
/// decreasing with an estimated tail below `tol`. Polynomial maps are summed exactly.
pub fn apply_series(f: &DiscMap, a: &CMatrix, tol: f64, max_terms: usize) -> Result<CMatrix> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::input("series tolerance must be positive"));
    }
    let rho = spectral_radius(a)?;
    if rho >= 1.0 {
        return Err(Error::Domain(format!(
            "series calculus needs spectral radius < 1, got {rho}"
        )));
    }
    if let Some(p) = f.polynomial_coeffs() {
        return Ok(horner(&p, a));
    }
    let n = a.n();
    let mut coeffs = f.taylor_coeffs(64.min(max_terms + 1));
    let mut sum = CMatrix::scalar(n, coeffs[0]);
    let mut power = CMatrix::identity(n);
    let mut norms = vec![power.frobenius_norm()];
    let mut last_term = coeffs[0].norm() * norms[0];
    for j in 1..=max_terms {
        if j >= coeffs.len() {
            coeffs = f.taylor_coeffs((2 * coeffs.len()).min(max_terms + 1));
        }
        power = &power * a;
        let pn = power.frobenius_norm();
        if pn == 0.0 {
            return Ok(sum);
        }
        let term = power.scale(coeffs[j]);
        last_term = term.frobenius_norm();
        sum = &sum + &term;
        norms.push(pn);
        if j >= 2 && last_term < tol {
            let (p2, p1, p0) = (norms[j - 2], norms[j - 1], pn);
            if p0 < p1 && p1 < p2 {
                let q = (p0 / p1).max(p1 / p2);
                // |c_k| ≤ 1 for self-maps of the disc, so the power norms bound the tail.
                let tail = p0 * q / (1.0 - q);
                if tail < tol {
                    return Ok(sum);
                }
            }
        }
    }
    Err(Error::numerical(
        format!("series did not converge within {max_terms} terms"),
        last_term,
    ))
}

/// Newton divided differences on nodes `λ_i` repeated `m_i` times, fed with local Taylor data.
fn hermite_newton(f: &DiscMap, nodes: &[(C64, usize)]) -> Result<(Vec<C64>, Vec<C64>)> {
    let mut xs = Vec::new();
    let mut group = Vec::new();
    let mut local = Vec::new();
    for (g, &(lambda, m)) in nodes.iter().enumerate() {
        if lambda.norm() >= 1.0 {
            return Err(Error::Domain(format!(
                "eigenvalue {lambda} lies outside the open unit disc"
            )));
        }
        local.push(f.local_taylor(lambda, m.max(1)).0);
        for _ in 0..m.max(1) {
            xs.push(lambda);
            group.push(g);
        }
    }
    let len = xs.len();
    let mut coef: Vec<C64> = group.iter().map(|&g| local[g][0]).collect();
    for j in 1..len {
        for i in (j..len).rev() {
            coef[i] = if group[i] == group[i - j] {
                local[group[i]][j]
            } else {
                (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
            };
        }
    }
    Ok((xs, coef))
}

/// `p(A)` for the Hermite interpolant `p` of `f` at the given nodes.
pub fn hermite_apply(f: &DiscMap, a: &CMatrix, nodes: &[(C64, usize)]) -> Result<CMatrix> {
    let (xs, coef) = hermite_newton(f, nodes)?;
    let len = xs.len();
    let mut acc = CMatrix::scalar(a.n(), coef[len - 1]);
    for k in (0..len - 1).rev() {
        acc = (&acc * &a.shift(-xs[k])).shift(coef[k]);
    }
    Ok(acc)
}

/// Orders nodes so that each next center is farthest from those already chosen.
fn leja_order(mut nodes: Vec<(C64, usize)>) -> Vec<(C64, usize)> {
    let mut out: Vec<(C64, usize)> = Vec::with_capacity(nodes.len());
    while !nodes.is_empty() {
        let score = |x: C64| -> f64 {
            if out.is_empty() {
                x.norm()
            } else {
                out.iter().map(|(y, _)| (x - y).norm().ln()).sum()
            }
        };
        let best = (0..nodes.len())
            .max_by(|&i, &j| score(nodes[i].0).total_cmp(&score(nodes[j].0)))
            .expect("nonempty");
        out.push(nodes.swap_remove(best));
    }
    out
}

/// `f(A)` through Hermite interpolation on the spectrum with derivatives up to block size.
pub fn apply_exact<'a>(f: &DiscMap, arg: impl Into<MatrixArg<'a>>) -> Result<CMatrix> {
    let (matrix, nodes): (CMatrix, Vec<(C64, usize)>) = match arg.into() {
        MatrixArg::Raw(a) => {
            if let Some(p) = f.polynomial_coeffs() {
                return Ok(horner(&p, a));
            }
            let st = eigen_structure(a, StructureTols::default()).map_err(|e| {
                Error::numerical(
                    format!("cannot resolve Jordan structure ({e}); use apply_series instead"),
                    match e {
                        Error::Numerical { residual, .. } => residual,
                        _ => f64::NAN,
                    },
                )
            })?;
            (a.clone(), st.hermite_nodes())
        }
        MatrixArg::Realized(r) => {
            let a = r.realize();
            if let Some(p) = f.polynomial_coeffs() {
                return Ok(horner(&p, &a));
            }
            let nodes = r
                .spec()
                .groups()
                .iter()
                .map(|g| (g.eigenvalue, g.sizes[0]))
                .collect();
            (a, nodes)
        }
        MatrixArg::Hinted { matrix, nodes } => {
            if let Some(p) = f.polynomial_coeffs() {
                return Ok(horner(&p, matrix));
            }
            (matrix.clone(), nodes.to_vec())
        }
    };
    hermite_apply(f, &matrix, &leja_order(nodes))
}

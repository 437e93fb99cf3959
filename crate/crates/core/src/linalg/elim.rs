//! Gaussian elimination kernels: numerical rank and null spaces by complete pivoting,
//! determinants, solves and inverses by partial pivoting.

use num_complex::Complex64 as C64;

use super::matrix::{CMatrix, DenseView};
use crate::error::{Error, Result};

/// Default relative pivot threshold for [`rank`].
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// Relative pivot threshold below which a solve declares the matrix singular.
pub const SINGULAR_TOL: f64 = 1e-14;

struct Echelon {
    /// Row-major working copy after elimination.
    a: Vec<C64>,
    cols: usize,
    /// `col_perm[k]` is the original column occupying position `k`.
    col_perm: Vec<usize>,
    rank: usize,
}

fn complete_pivot<M: DenseView + ?Sized>(
    m: &M,
    tol: f64,
    scale: f64,
    reduce_above: bool,
) -> Echelon {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.data().to_vec();
    let mut col_perm: Vec<usize> = (0..cols).collect();
    let mut largest = 0.0;
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        let (mut pi, mut pj, mut best) = (k, k, -1.0);
        for i in k..rows {
            for j in k..cols {
                let v = a[i * cols + j].norm();
                if v > best {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        }
        if k == 0 {
            largest = best.max(scale);
        }
        if best <= 0.0 || best <= tol * largest {
            break;
        }
        if pi != k {
            for j in 0..cols {
                a.swap(pi * cols + j, k * cols + j);
            }
        }
        if pj != k {
            for i in 0..rows {
                a.swap(i * cols + pj, i * cols + k);
            }
            col_perm.swap(pj, k);
        }
        let pivot = a[k * cols + k];
        let targets: Box<dyn Iterator<Item = usize>> = if reduce_above {
            Box::new((0..rows).filter(|&i| i != k))
        } else {
            Box::new(k + 1..rows)
        };
        for i in targets {
            let factor = a[i * cols + k] / pivot;
            if factor == C64::new(0.0, 0.0) {
                continue;
            }
            for j in k..cols {
                let upd = factor * a[k * cols + j];
                a[i * cols + j] -= upd;
            }
        }
        rank += 1;
    }
    Echelon {
        a,
        cols,
        col_perm,
        rank,
    }
}

/// Numerical rank by complete-pivot elimination: a pivot counts while its modulus exceeds
/// `tol` times the largest initial pivot (the largest entry modulus).
pub fn rank<M: DenseView + ?Sized>(m: &M, tol: f64) -> usize {
    complete_pivot(m, tol, 0.0, false).rank
}

/// Like [`rank`], with pivots measured against `max(largest entry, scale)`. Needed when the
/// matrix itself is rounding noise of something whose natural size is `scale`.
pub fn rank_scaled<M: DenseView + ?Sized>(m: &M, tol: f64, scale: f64) -> usize {
    complete_pivot(m, tol, scale, false).rank
}

/// Basis of the numerical null space of `m` (vectors of length `m.cols()`), one per free column.
pub fn null_space<M: DenseView + ?Sized>(m: &M, tol: f64) -> Vec<Vec<C64>> {
    null_space_scaled(m, tol, 0.0)
}

/// [`null_space`] with pivots judged against `max(scale, max |m_ij|)`, for matrices that are
/// pure rounding noise relative to some known magnitude.
pub fn null_space_scaled<M: DenseView + ?Sized>(m: &M, tol: f64, scale: f64) -> Vec<Vec<C64>> {
    let e = complete_pivot(m, tol, scale, true);
    let cols = e.cols;
    let r = e.rank;
    (r..cols)
        .map(|free| {
            let mut x = vec![C64::new(0.0, 0.0); cols];
            x[e.col_perm[free]] = C64::new(1.0, 0.0);
            // Reduced form: pivot row i reads a_ii x_{p(i)} + Σ_{free} a_{i,f} x_{p(f)} = 0.
            for i in 0..r {
                let coeff = e.a[i * cols + free];
                x[e.col_perm[i]] = -coeff / e.a[i * cols + i];
            }
            x
        })
        .collect()
}

struct Lu {
    n: usize,
    lu: Vec<C64>,
    perm: Vec<usize>,
    sign: f64,
}

fn lu_decompose(a: &CMatrix) -> Result<Lu> {
    let n = a.n();
    let mut lu = a.as_slice().to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;
    let scale = a.max_abs();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| lu[i * n + k].norm().total_cmp(&lu[j * n + k].norm()))
            .unwrap();
        let pv = lu[p * n + k].norm();
        if scale == 0.0 || pv <= SINGULAR_TOL * scale {
            return Err(Error::numerical(
                format!("matrix is singular to working tolerance at elimination step {k}"),
                pv,
            ));
        }
        if p != k {
            for j in 0..n {
                lu.swap(p * n + j, k * n + j);
            }
            perm.swap(p, k);
            sign = -sign;
        }
        let pivot = lu[k * n + k];
        for i in k + 1..n {
            let f = lu[i * n + k] / pivot;
            lu[i * n + k] = f;
            for j in k + 1..n {
                let upd = f * lu[k * n + j];
                lu[i * n + j] -= upd;
            }
        }
    }
    Ok(Lu { n, lu, perm, sign })
}

impl Lu {
    fn solve(&self, b: &[C64]) -> Vec<C64> {
        let n = self.n;
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let upd = self.lu[i * n + j] * x[j];
                x[i] -= upd;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let upd = self.lu[i * n + j] * x[j];
                x[i] -= upd;
            }
            x[i] /= self.lu[i * n + i];
        }
        x
    }
}

/// Solves `A·x = b`.
pub fn solve(a: &CMatrix, b: &[C64]) -> Result<Vec<C64>> {
    if b.len() != a.n() {
        return Err(Error::input(format!(
            "right-hand side has length {}, expected {}",
            b.len(),
            a.n()
        )));
    }
    Ok(lu_decompose(a)?.solve(b))
}

pub fn inverse(a: &CMatrix) -> Result<CMatrix> {
    let n = a.n();
    let lu = lu_decompose(a)?;
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![C64::new(0.0, 0.0); n];
        e[j] = C64::new(1.0, 0.0);
        cols.push(lu.solve(&e));
    }
    CMatrix::from_columns(&cols)
}

/// Determinant by partial-pivot LU; exactly zero when elimination meets a zero pivot.
pub fn determinant(a: &CMatrix) -> C64 {
    match lu_decompose(a) {
        Ok(lu) => {
            let n = lu.n;
            (0..n).map(|i| lu.lu[i * n + i]).product::<C64>() * lu.sign
        }
        Err(_) => determinant_unpivoted_fallback(a),
    }
}

// Singular-to-tolerance matrices still get a (tiny) determinant rather than an error.
fn determinant_unpivoted_fallback(a: &CMatrix) -> C64 {
    let n = a.n();
    let mut m = a.as_slice().to_vec();
    let mut det = C64::new(1.0, 0.0);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[i * n + k].norm().total_cmp(&m[j * n + k].norm()))
            .unwrap();
        if m[p * n + k] == C64::new(0.0, 0.0) {
            return C64::new(0.0, 0.0);
        }
        if p != k {
            for j in 0..n {
                m.swap(p * n + j, k * n + j);
            }
            det = -det;
        }
        let pivot = m[k * n + k];
        det *= pivot;
        for i in k + 1..n {
            let f = m[i * n + k] / pivot;
            for j in k..n {
                let upd = f * m[k * n + j];
                m[i * n + j] -= upd;
            }
        }
    }
    det
}

/// Conjugation `S·X·S⁻¹`.
pub fn conjugate(s: &CMatrix, x: &CMatrix) -> Result<CMatrix> {
    let s_inv = inverse(s)?;
    Ok(&(s * x) * &s_inv)
}

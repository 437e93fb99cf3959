//! Polynomials over `C`, the Faddeev–LeVerrier characteristic polynomial and the
//! Aberth–Ehrlich simultaneous root finder.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::matrix::CMatrix;
use crate::error::{Error, Result};

const EPS: f64 = f64::EPSILON;

/// Default backward-error tolerance for accepted roots.
pub const DEFAULT_ROOT_TOL: f64 = 1e-8;

const MAX_ABERTH_ITER: usize = 2000;
const ANGLE_OFFSET: f64 = 0.4;

/// Polynomial with coefficients in ascending degree; the leading coefficient is nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<C64>,
}

impl Polynomial {
    /// Trims exact zero high-order coefficients; fails on the zero polynomial or non-finite input.
    pub fn new(mut coeffs: Vec<C64>) -> Result<Self> {
        if coeffs
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::input("polynomial coefficients must be finite"));
        }
        while coeffs.last().is_some_and(|z| *z == C64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::input("the zero polynomial has no degree"));
        }
        Ok(Polynomial { coeffs })
    }

    /// Monic polynomial `∏ (λ − r_i)`.
    pub fn from_roots(roots: &[C64]) -> Self {
        let mut coeffs = vec![C64::new(1.0, 0.0)];
        for &r in roots {
            coeffs.push(C64::new(0.0, 0.0));
            for k in (1..coeffs.len()).rev() {
                let prev = coeffs[k - 1];
                coeffs[k] = prev - r * coeffs[k];
            }
            coeffs[0] = -r * coeffs[0];
        }
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> C64 {
        self.coeffs[self.degree()]
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value, first derivative and a running rounding-error bound for Horner's scheme.
    fn eval_with_bound(&self, z: C64) -> (C64, C64, f64) {
        let mut p = C64::new(0.0, 0.0);
        let mut dp = C64::new(0.0, 0.0);
        let mut mag = 0.0;
        let az = z.norm();
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
            mag = mag * az + c.norm();
        }
        (p, dp, mag)
    }

    /// `Σ |c_k| |z|^k`, the natural scale for the backward error at `z`.
    pub fn abs_eval(&self, z: C64) -> f64 {
        let az = z.norm();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * az + c.norm())
    }

    pub fn derivative(&self) -> Polynomial {
        if self.degree() == 0 {
            return Polynomial {
                coeffs: vec![C64::new(0.0, 0.0)],
            };
        }
        Polynomial {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        }
    }

    pub fn nth_derivative(&self, k: usize) -> Polynomial {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    /// Relative backward error of `z` as a root: `|p(z)| / Σ |c_k| |z|^k`.
    pub fn backward_error(&self, z: C64) -> f64 {
        let scale = self.abs_eval(z);
        if scale == 0.0 {
            0.0
        } else {
            self.eval(z).norm() / scale
        }
    }

    pub fn norm1(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }
}

/// Characteristic polynomial `det(λI − A)` by the Faddeev–LeVerrier recurrence.
///
/// `M_1 = I`, `c_{n−k} = −tr(A·M_k)/k`, `M_{k+1} = A·M_k + c_{n−k}·I`.
pub fn char_poly(a: &CMatrix) -> Polynomial {
    let n = a.n();
    let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
    coeffs[n] = C64::new(1.0, 0.0);
    let mut m = CMatrix::identity(n);
    for k in 1..=n {
        let am = a * &m;
        coeffs[n - k] = -am.trace() / k as f64;
        if k < n {
            m = am.shift(coeffs[n - k]);
        }
    }
    Polynomial { coeffs }
}

/// All roots of `p`, with multiplicity, by Aberth–Ehrlich iteration.
///
/// Each returned root has relative backward error below `tol`. Groups of roots that rounding
/// noise cannot tell apart from one multiple root are merged to a common refined center.
pub fn poly_roots(p: &Polynomial, tol: f64) -> Result<Vec<C64>> {
    poly_roots_with_uncertainty(p, tol, &[])
}

/// Like [`poly_roots`], with an absolute uncertainty per coefficient (ascending order). The
/// uncertainty widens both the multiple-root detection and the final backward-error check.
/// Missing entries count as zero.
pub fn poly_roots_with_uncertainty(
    p: &Polynomial,
    tol: f64,
    coeff_err: &[f64],
) -> Result<Vec<C64>> {
    if p.degree() == 0 {
        return Err(Error::input(
            "root finding needs a polynomial of degree at least 1",
        ));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::input(format!(
            "root tolerance must be positive, got {tol}"
        )));
    }
    let lead = p.leading();
    let mut coeffs: Vec<C64> = p.coeffs.iter().map(|c| c / lead).collect();
    let mut errs: Vec<f64> = (0..coeffs.len())
        .map(|k| coeff_err.get(k).copied().unwrap_or(0.0) / lead.norm())
        .collect();
    let monic = Polynomial {
        coeffs: coeffs.clone(),
    };
    let all_errs = errs.clone();

    let mut roots = Vec::with_capacity(p.degree());
    // Exact zero roots.
    while coeffs.len() > 1 && coeffs[0] == C64::new(0.0, 0.0) {
        coeffs.remove(0);
        errs.remove(0);
        roots.push(C64::new(0.0, 0.0));
    }
    let q = Polynomial { coeffs };
    match q.degree() {
        0 => {}
        1 => roots.push(-q.coeffs[0]),
        _ => {
            let mut found = aberth(&q);
            merge_clusters(&q, &errs, &mut found);
            polish_simple_roots(&q, &mut found);
            roots.extend(found);
        }
    }

    // A root passes if |p(z)| < tol·Σ|c_k||z|^k + K·Σ e_k|z|^k, i.e. it is a root of a
    // polynomial within the stated coefficient uncertainty.
    let worst = roots
        .iter()
        .map(|&z| {
            let az = z.norm();
            let slack = all_errs.iter().rev().fold(0.0, |acc, e| acc * az + e);
            let val = monic.eval(z).norm();
            let scale = monic.abs_eval(z) + CLUSTER_NOISE_FACTOR * slack / tol;
            if scale == 0.0 {
                0.0
            } else {
                val / scale
            }
        })
        .fold(0.0, f64::max);
    if worst.is_nan() || worst >= tol {
        return Err(Error::numerical(
            format!("root finder did not reach backward error {tol:e}"),
            worst,
        ));
    }
    Ok(roots)
}

fn initial_guesses(p: &Polynomial) -> Vec<C64> {
    let d = p.degree();
    let radius = 1.0 + p.coeffs[..d].iter().map(|c| c.norm()).fold(0.0, f64::max);
    (0..d)
        .map(|k| C64::from_polar(radius, 2.0 * PI * k as f64 / d as f64 + ANGLE_OFFSET))
        .collect()
}

/// Gauss–Seidel style Aberth iteration on a monic polynomial; a root is frozen once its
/// residual falls inside the Horner rounding bound or its correction stalls.
fn aberth(p: &Polynomial) -> Vec<C64> {
    let d = p.degree();
    let mut z = initial_guesses(p);
    let mut frozen = vec![false; d];
    let unit = 2.0 * d as f64 * EPS;
    for _ in 0..MAX_ABERTH_ITER {
        let mut active = false;
        for i in 0..d {
            if frozen[i] {
                continue;
            }
            let (val, der, mag) = p.eval_with_bound(z[i]);
            if val.norm() <= unit * mag {
                frozen[i] = true;
                continue;
            }
            active = true;
            let ratio = if der == C64::new(0.0, 0.0) {
                val / (unit * mag.max(1.0))
            } else {
                val / der
            };
            let mut repulsion = C64::new(0.0, 0.0);
            for j in 0..d {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff != C64::new(0.0, 0.0) {
                        repulsion += diff.inv();
                    }
                }
            }
            let denom = C64::new(1.0, 0.0) - ratio * repulsion;
            let step = if denom == C64::new(0.0, 0.0) {
                ratio
            } else {
                ratio / denom
            };
            if !step.re.is_finite() || !step.im.is_finite() {
                frozen[i] = true;
                continue;
            }
            z[i] -= step;
            if step.norm() <= EPS * z[i].norm().max(EPS) {
                frozen[i] = true;
            }
        }
        if !active {
            break;
        }
    }
    z
}

/// Safety factor on the evaluation noise when deciding whether a group is one multiple root.
const CLUSTER_NOISE_FACTOR: f64 = 100.0;

/// First `m` Taylor coefficients of the polynomial with ascending `coeffs` at `c`, by repeated
/// synthetic division.
fn taylor_at<T>(coeffs: &[T], c: T, m: usize) -> Vec<T>
where
    T: Copy + std::ops::Mul<Output = T> + std::ops::Add<Output = T>,
{
    let mut b = coeffs.to_vec();
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        if b.is_empty() {
            break;
        }
        let top = b.len() - 1;
        for k in (0..top).rev() {
            b[k] = b[k] + c * b[k + 1];
        }
        out.push(b[0]);
        b.remove(0);
    }
    out
}

/// Whether some polynomial within `K` times the coefficient uncertainty of `p` has an `m`-fold
/// root at `c`: each Taylor coefficient `t_j`, `j < m`, of `p` at `c` must be below `K` times
/// the uncertainty it inherits from the coefficients (stated error `e_i` plus rounding).
fn merge_is_consistent(p: &Polynomial, coeff_err: &[f64], unit: f64, m: usize, c: C64) -> bool {
    let t = taylor_at(&p.coeffs, c, m);
    let w: Vec<f64> = p
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, ci)| coeff_err.get(i).copied().unwrap_or(0.0) + unit * ci.norm())
        .collect();
    let eps = taylor_at(&w, c.norm(), m);
    t.iter()
        .zip(&eps)
        .all(|(tj, ej)| tj.norm() <= CLUSTER_NOISE_FACTOR * ej)
}

/// Merges numerically multiple roots and replaces each merged group of size `m` by the nearby
/// root of `p^{(m−1)}` (falling back to the centroid).
///
/// Groups grow by single linkage in order of distance. A candidate group of `m` roots is
/// accepted only if `p` lies within its coefficient uncertainty of a polynomial with an
/// `m`-fold root at the refined center.
fn merge_clusters(p: &Polynomial, coeff_err: &[f64], z: &mut [C64]) {
    let d = z.len();
    let unit = 2.0 * d as f64 * EPS;
    let centroid =
        |members: &[usize]| members.iter().map(|&i| z[i]).sum::<C64>() / members.len() as f64;
    let spread = |members: &[usize], c: C64| {
        members
            .iter()
            .map(|&i| (z[i] - c).norm())
            .fold(0.0, f64::max)
    };

    let mut pairs: Vec<(f64, usize, usize)> = (0..d)
        .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
        .map(|(i, j)| ((z[i] - z[j]).norm(), i, j))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut label: Vec<usize> = (0..d).collect();
    let mut center: Vec<C64> = z.to_vec();
    for (_, i, j) in pairs {
        let (li, lj) = (label[i], label[j]);
        if li == lj {
            continue;
        }
        let mut merged: Vec<usize> = (0..d)
            .filter(|&k| label[k] == li || label[k] == lj)
            .collect();
        // Close over roots lying inside the candidate: they must belong to it.
        loop {
            let c = centroid(&merged);
            let reach = 3.0 * spread(&merged, c);
            let extra: Vec<usize> = (0..d)
                .filter(|k| !merged.contains(k) && (z[*k] - c).norm() <= reach)
                .collect();
            if extra.is_empty() {
                break;
            }
            let labels: Vec<usize> = extra.iter().map(|&k| label[k]).collect();
            let more: Vec<usize> = (0..d)
                .filter(|q| labels.contains(&label[*q]) && !merged.contains(q))
                .collect();
            merged.extend(more);
        }
        let c0 = centroid(&merged);
        let m = merged.len();
        // The center may move anywhere closer to the group than to the other roots.
        let reach = (0..d)
            .filter(|k| !merged.contains(k))
            .map(|k| 0.5 * (z[k] - c0).norm())
            .fold(1.0 + c0.norm(), f64::min);
        let c = refine_multiple_root(p, m, c0, reach.max(spread(&merged, c0)));
        if merge_is_consistent(p, coeff_err, unit, m, c) {
            let l = merged.iter().map(|&k| label[k]).min().expect("nonempty");
            for k in merged {
                label[k] = l;
            }
            center[l] = c;
        }
    }

    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); d];
    for (i, &l) in label.iter().enumerate() {
        groups[l].push(i);
    }
    for (l, members) in groups.iter().enumerate() {
        if members.len() >= 2 {
            for &i in members {
                z[i] = center[l];
            }
        }
    }
}

/// Evaluating `p` next to a multiple root is dominated by rounding, which leaves nearby simple
/// roots inaccurate. Divide the merged multiple factors out and refine the simple roots on the
/// quotient with a few Aberth sweeps. A refined root is kept only if it stays closer to its
/// start than to any other root.
fn polish_simple_roots(p: &Polynomial, z: &mut [C64]) {
    let d = z.len();
    let count = |w: C64| z.iter().filter(|&&v| v == w).count();
    let simple: Vec<usize> = (0..d).filter(|&i| count(z[i]) == 1).collect();
    if simple.is_empty() || simple.len() == d {
        return;
    }
    let mut q = p.coeffs.clone();
    for &zi in z.iter() {
        if count(zi) > 1 {
            // Synthetic division by (λ − z_i), dropping the remainder.
            let top = q.len() - 1;
            let mut quot = vec![C64::new(0.0, 0.0); top];
            let mut acc = C64::new(0.0, 0.0);
            for k in (0..top).rev() {
                acc = q[k + 1] + acc * zi;
                quot[k] = acc;
            }
            q = quot;
        }
    }
    let q = Polynomial { coeffs: q };
    let mut w: Vec<C64> = simple.iter().map(|&i| z[i]).collect();
    for _ in 0..8 {
        for a in 0..w.len() {
            let (val, der, _) = q.eval_with_bound(w[a]);
            if der == C64::new(0.0, 0.0) {
                continue;
            }
            let ratio = val / der;
            let repulsion: C64 = (0..w.len())
                .filter(|&b| b != a && w[b] != w[a])
                .map(|b| (w[a] - w[b]).inv())
                .sum();
            let denom = C64::new(1.0, 0.0) - ratio * repulsion;
            let step = if denom == C64::new(0.0, 0.0) {
                ratio
            } else {
                ratio / denom
            };
            if step.re.is_finite() && step.im.is_finite() {
                w[a] -= step;
            }
        }
    }
    for (a, &i) in simple.iter().enumerate() {
        let moved = (w[a] - z[i]).norm();
        let nearest = (0..d)
            .filter(|&k| k != i)
            .map(|k| (z[k] - z[i]).norm())
            .fold(f64::INFINITY, f64::min);
        if w[a].re.is_finite() && w[a].im.is_finite() && moved < 0.5 * nearest {
            z[i] = w[a];
        }
    }
}

fn refine_multiple_root(p: &Polynomial, m: usize, start: C64, spread: f64) -> C64 {
    let q = p.nth_derivative(m - 1);
    if q.degree() == 0 {
        return start;
    }
    let dq = q.derivative();
    let mut c = start;
    for _ in 0..30 {
        let der = dq.eval(c);
        if der == C64::new(0.0, 0.0) {
            break;
        }
        let step = q.eval(c) / der;
        if !step.re.is_finite() || !step.im.is_finite() {
            return start;
        }
        c -= step;
        if step.norm() <= 4.0 * EPS * c.norm().max(1.0) {
            break;
        }
    }
    if (c - start).norm() <= spread.max(EPS) {
        c
    } else {
        start
    }
}

/// A-priori absolute error scale for the Faddeev–LeVerrier coefficients of `A`.
pub fn char_poly_uncertainty(a: &CMatrix) -> Vec<f64> {
    let n = a.n();
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
    // Coefficient of λ^{n−k} carries k products of A.
    (0..=n)
        .map(|i| {
            let k = (n - i) as f64;
            4.0 * k * EPS * scale.powi((n - i) as i32)
        })
        .collect()
}

/// Eigenvalues of `A` with multiplicity, as the roots of its characteristic polynomial.
pub fn eigenvalues(a: &CMatrix, tol: f64) -> Result<Vec<C64>> {
    let p = char_poly(a);
    poly_roots_with_uncertainty(&p, tol, &char_poly_uncertainty(a))
}

//! Spectral radius, the symmetrization map `σ`, the elementary symmetric map `π_n`,
//! membership in `Ω_n`, `G_n`, `J_n`, and the analytic Jacobian `σ′(A)`.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{
    self, char_poly, determinant, eigenvalues, poly_roots, CMatrix, Polynomial, RectMatrix,
    DEFAULT_ROOT_TOL,
};

/// Point `z = (z_1, …, z_n)` of `C^n` in symmetrized-polydisc coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct SymPoint {
    z: Vec<C64>,
}

impl SymPoint {
    pub fn new(z: Vec<C64>) -> Result<Self> {
        if z.len() < 2 {
            return Err(Error::input(format!(
                "symmetric point needs at least 2 coordinates, got {}",
                z.len()
            )));
        }
        if z.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::input("symmetric point coordinates must be finite"));
        }
        Ok(SymPoint { z })
    }

    pub fn zero(n: usize) -> Self {
        assert!(n >= 2);
        SymPoint {
            z: vec![C64::new(0.0, 0.0); n],
        }
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }

    pub fn coords(&self) -> &[C64] {
        &self.z
    }

    /// The monic polynomial `λ^n + Σ_j (−1)^j z_j λ^{n−j}` whose roots `ζ` satisfy `π_n(ζ) = z`.
    pub fn polynomial(&self) -> Polynomial {
        let n = self.n();
        let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
        coeffs[n] = C64::new(1.0, 0.0);
        for (j, &zj) in self.z.iter().enumerate() {
            let j = j + 1;
            coeffs[n - j] = if j % 2 == 0 { zj } else { -zj };
        }
        Polynomial::new(coeffs).expect("monic polynomial is nonzero")
    }

    /// Roots `ζ_1, …, ζ_n` with `π_n(ζ) = z`.
    pub fn roots(&self, tol: f64) -> Result<Vec<C64>> {
        poly_roots(&self.polynomial(), tol)
    }

    /// `max_j |z_j − w_j|`.
    pub fn max_abs_diff(&self, other: &SymPoint) -> f64 {
        assert_eq!(
            self.n(),
            other.n(),
            "dimension mismatch between symmetric points"
        );
        self.z
            .iter()
            .zip(&other.z)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.z.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// `ρ(A) = max |λ|` over the eigenvalues of `A`.
pub fn spectral_radius(a: &CMatrix) -> Result<f64> {
    spectral_radius_tol(a, DEFAULT_ROOT_TOL)
}

pub fn spectral_radius_tol(a: &CMatrix, tol: f64) -> Result<f64> {
    Ok(eigenvalues(a, tol)?
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max))
}

/// `σ(A)`: `σ_j = (−1)^j` times the coefficient of `λ^{n−j}` in `det(λI − A)`.
pub fn sigma(a: &CMatrix) -> SymPoint {
    let n = a.n();
    let p = char_poly(a);
    let z = (1..=n)
        .map(|j| {
            let c = p.coeffs()[n - j];
            if j % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    SymPoint { z }
}

/// `π_n(ζ)`: the elementary symmetric polynomials of `ζ`, by incremental expansion of `∏(λ − ζ_i)`.
pub fn pi_n(zetas: &[C64]) -> Result<SymPoint> {
    let n = zetas.len();
    let mut e = vec![C64::new(0.0, 0.0); n + 1];
    e[0] = C64::new(1.0, 0.0);
    for (k, &zeta) in zetas.iter().enumerate() {
        for j in (1..=k + 1).rev() {
            let prev = e[j - 1];
            e[j] += zeta * prev;
        }
    }
    SymPoint::new(e[1..].to_vec())
}

/// `A ∈ Ω_n` with a safety margin: `ρ(A) < 1 − margin`.
pub fn in_omega(a: &CMatrix, margin: f64) -> Result<bool> {
    Ok(spectral_radius(a)? < 1.0 - margin)
}

/// `z ∈ G_n`: every root of the associated monic polynomial lies in the disc of radius `1 − margin`.
pub fn in_gn(z: &SymPoint, margin: f64) -> Result<bool> {
    let roots = z.roots(DEFAULT_ROOT_TOL)?;
    Ok(roots.iter().map(|r| r.norm()).fold(0.0, f64::max) < 1.0 - margin)
}

/// Default distance under which two roots count as repeated in [`in_jn`].
pub const DEFAULT_REPEAT_TOL: f64 = 1e-6;

/// `z ∈ J_n`: the associated roots all lie in the open unit disc and two of them are closer
/// than `tol`.
pub fn in_jn(z: &SymPoint, tol: f64) -> Result<bool> {
    let roots = z.roots(DEFAULT_ROOT_TOL)?;
    if roots.iter().any(|r| r.norm() >= 1.0) {
        return Ok(false);
    }
    let repeated = roots
        .iter()
        .enumerate()
        .any(|(i, a)| roots[i + 1..].iter().any(|b| (a - b).norm() < tol));
    Ok(repeated)
}

/// Discriminant of the polynomial attached to `z`, through the Sylvester resultant with its
/// derivative: `disc(p) = (−1)^{n(n−1)/2} Res(p, p′)` for monic `p`.
pub fn discriminant(z: &SymPoint) -> C64 {
    let p = z.polynomial();
    let dp = p.derivative();
    let n = p.degree();
    let size = 2 * n - 1;
    let desc_p: Vec<C64> = p.coeffs().iter().rev().copied().collect();
    let desc_dp: Vec<C64> = dp.coeffs().iter().rev().copied().collect();
    let mut syl = CMatrix::zeros(size);
    for row in 0..n - 1 {
        for (k, &c) in desc_p.iter().enumerate() {
            syl[(row, row + k)] = c;
        }
    }
    for row in 0..n {
        for (k, &c) in desc_dp.iter().enumerate() {
            syl[(n - 1 + row, row + k)] = c;
        }
    }
    let res = determinant(&syl);
    if (n * (n - 1) / 2).is_multiple_of(2) {
        res
    } else {
        -res
    }
}

/// `σ′(A)` as an `n × n²` matrix; column `r·n + s` holds `∂σ_j/∂a_{r,s}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaJacobian {
    n: usize,
    matrix: RectMatrix,
}

impl SigmaJacobian {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `∂σ_j/∂a_{r,s}` with `j` one-based and `r, s` zero-based.
    pub fn entry(&self, j: usize, r: usize, s: usize) -> C64 {
        self.matrix[(j - 1, r * self.n + s)]
    }

    pub fn as_rect(&self) -> &RectMatrix {
        &self.matrix
    }

    pub fn rank(&self, tol: f64) -> usize {
        linalg::rank(&self.matrix, tol)
    }
}

/// Analytic Jacobian of `σ` via power sums `p_k = tr(A^k)`, `∂p_k/∂a_{r,s} = k·(A^{k−1})_{s,r}`,
/// pushed through Newton's identities `j·e_j = Σ_{i=1}^{j} (−1)^{i−1} e_{j−i} p_i`.
pub fn sigma_jacobian(a: &CMatrix) -> SigmaJacobian {
    let n = a.n();
    let nn = n * n;
    let zero = C64::new(0.0, 0.0);

    let mut powers = Vec::with_capacity(n + 1);
    powers.push(CMatrix::identity(n));
    for k in 1..=n {
        powers.push(&powers[k - 1] * a);
    }
    let p: Vec<C64> = (0..=n).map(|k| powers[k].trace()).collect();
    let dp: Vec<Vec<C64>> = (0..=n)
        .map(|k| {
            if k == 0 {
                return vec![zero; nn];
            }
            let prev = &powers[k - 1];
            let mut g = vec![zero; nn];
            for r in 0..n {
                for s in 0..n {
                    g[r * n + s] = prev[(s, r)] * k as f64;
                }
            }
            g
        })
        .collect();

    let mut e = vec![zero; n + 1];
    let mut de = vec![vec![zero; nn]; n + 1];
    e[0] = C64::new(1.0, 0.0);
    for j in 1..=n {
        let mut val = zero;
        let mut grad = vec![zero; nn];
        for i in 1..=j {
            let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
            val += e[j - i] * p[i] * sign;
            for (c, g) in grad.iter_mut().enumerate() {
                *g += (de[j - i][c] * p[i] + e[j - i] * dp[i][c]) * sign;
            }
        }
        e[j] = val / j as f64;
        de[j] = grad.into_iter().map(|g| g / j as f64).collect();
    }

    let data: Vec<C64> = de[1..].concat();
    SigmaJacobian {
        n,
        matrix: RectMatrix::new(n, nn, data).expect("jacobian entries are finite"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn sigma_examples() {
        let t0 = CMatrix::from_real(&[&[1.0, -1.0], &[1.0, -1.0]]);
        assert_eq!(sigma(&t0).coords(), &[c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(
            sigma(&CMatrix::identity(2)).coords(),
            &[c(2.0, 0.0), c(1.0, 0.0)]
        );
        let d = CMatrix::diag(&[c(0.5, 0.0), c(0.5, 0.0), c(-0.3, 0.0)]);
        let want = [c(0.7, 0.0), c(-0.05, 0.0), c(-0.075, 0.0)];
        let got = sigma(&d);
        for (g, w) in got.coords().iter().zip(want) {
            assert!((g - w).norm() < 1e-15);
        }
    }

    #[test]
    fn pi_n_examples() {
        let z = c(0.2, -0.7);
        let p = pi_n(&[z, z]).unwrap();
        assert!((p.coords()[0] - 2.0 * z).norm() < 1e-15);
        assert!((p.coords()[1] - z * z).norm() < 1e-15);
        let p = pi_n(&[c(0.3, 0.0), c(-0.4, 0.0)]).unwrap();
        assert!((p.coords()[0] - c(-0.1, 0.0)).norm() < 1e-15);
        assert!((p.coords()[1] - c(-0.12, 0.0)).norm() < 1e-15);
        assert!(pi_n(&[c(0.1, 0.0)]).is_err());
    }

    #[test]
    fn spectral_radius_examples() {
        assert_eq!(
            spectral_radius(&CMatrix::jordan_block(3, c(0.0, 0.0))).unwrap(),
            0.0
        );
        let d = CMatrix::diag(&[c(0.5, 0.0), c(-0.25, 0.0)]);
        assert!((spectral_radius(&d).unwrap() - 0.5).abs() < 1e-15);
        let zeta = 0.25;
        let a = CMatrix::from_real(&[&[0.0, 1.0 + zeta], &[zeta, 0.0]]);
        let want = (0.25f64 * 1.25).sqrt();
        assert!((spectral_radius(&a).unwrap() - want).abs() < 1e-14);
        assert!((want - 0.559017).abs() < 1e-6);
    }

    #[test]
    fn membership_examples() {
        assert!(in_omega(&CMatrix::zeros(3), 0.0).unwrap());
        assert!(!in_omega(&CMatrix::diag(&[c(1.5, 0.0), c(0.0, 0.0)]), 0.0).unwrap());
        let huge = CMatrix::elementary(2, 0, 1).scale_real(1e6);
        assert!(in_omega(&huge, 0.0).unwrap());
        assert!(in_gn(&SymPoint::zero(3), 0.0).unwrap());
        let boundary = SymPoint::new(vec![c(2.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(!in_gn(&boundary, 0.0).unwrap());
    }

    #[test]
    fn jn_and_discriminant() {
        let z = c(0.3, 0.1);
        let dup = pi_n(&[z, z]).unwrap();
        assert!(discriminant(&dup).norm() < 1e-15);
        assert!(in_jn(&dup, DEFAULT_REPEAT_TOL).unwrap());
        let distinct = pi_n(&[c(0.1, 0.0), c(0.2, 0.0)]).unwrap();
        assert!(!in_jn(&distinct, DEFAULT_REPEAT_TOL).unwrap());
        // z₁² − 4z₂ for n = 2.
        let d = discriminant(&distinct);
        let zc = distinct.coords();
        assert!((d - (zc[0] * zc[0] - 4.0 * zc[1])).norm() < 1e-15);
        // Repeated root outside the disc is not in J_n.
        let outside = pi_n(&[c(1.5, 0.0), c(1.5, 0.0)]).unwrap();
        assert!(!in_jn(&outside, DEFAULT_REPEAT_TOL).unwrap());
    }

    #[test]
    fn discriminant_of_cubic_matches_root_product() {
        let roots = [c(0.1, 0.2), c(-0.4, 0.0), c(0.3, -0.5)];
        let z = pi_n(&roots).unwrap();
        let mut want = c(1.0, 0.0);
        for i in 0..3 {
            for j in i + 1..3 {
                let d = roots[i] - roots[j];
                want *= d * d;
            }
        }
        assert!((discriminant(&z) - want).norm() < 1e-14);
    }

    #[test]
    fn jacobian_at_identity() {
        let j = sigma_jacobian(&CMatrix::identity(2));
        for r in 0..2 {
            for s in 0..2 {
                let delta = if r == s { c(1.0, 0.0) } else { c(0.0, 0.0) };
                assert!((j.entry(1, r, s) - delta).norm() < 1e-15);
                assert!((j.entry(2, r, s) - delta).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn jacobian_rank_at_zero_and_nilpotent() {
        let tol = crate::linalg::DEFAULT_RANK_TOL;
        assert_eq!(sigma_jacobian(&CMatrix::zeros(2)).rank(tol), 1);
        assert_eq!(
            sigma_jacobian(&CMatrix::jordan_block(2, c(0.0, 0.0))).rank(tol),
            2
        );
    }
}

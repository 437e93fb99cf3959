//! Known automorphisms of `Ω_n` and the equivariance residual.

use num_complex::Complex64 as C64;

use super::apply::{
    apply_exact, apply_series, CalculusMethod, MatrixArg, DEFAULT_SERIES_MAX_TERMS,
    DEFAULT_SERIES_TOL,
};
use super::discmap::{DiscMap, Mobius};
use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, inverse, CMatrix, DEFAULT_ROOT_TOL};
use crate::spectral::{pi_n, sigma, spectral_radius};

/// `A ↦ S · m(A′) · S⁻¹` with `A′ ∈ {A, Aᵀ}` and `m` a disc automorphism.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaAut {
    mobius: Mobius,
    conjugator: CMatrix,
    conjugator_inv: CMatrix,
    transpose: bool,
}

impl OmegaAut {
    pub fn new(mobius: Mobius, conjugator: CMatrix, transpose: bool) -> Result<Self> {
        let conjugator_inv = inverse(&conjugator)
            .map_err(|_| Error::input("automorphism conjugator is numerically singular"))?;
        Ok(OmegaAut {
            mobius,
            conjugator,
            conjugator_inv,
            transpose,
        })
    }

    pub fn identity(n: usize) -> Self {
        OmegaAut {
            mobius: Mobius::identity(),
            conjugator: CMatrix::identity(n),
            conjugator_inv: CMatrix::identity(n),
            transpose: false,
        }
    }

    pub fn mobius(&self) -> &Mobius {
        &self.mobius
    }

    pub fn conjugator(&self) -> &CMatrix {
        &self.conjugator
    }

    pub fn transpose_flag(&self) -> bool {
        self.transpose
    }

    pub fn inverse(&self) -> OmegaAut {
        let mobius = self.mobius.inverse();
        if self.transpose {
            OmegaAut {
                mobius,
                conjugator: self.conjugator.transpose(),
                conjugator_inv: self.conjugator_inv.transpose(),
                transpose: true,
            }
        } else {
            OmegaAut {
                mobius,
                conjugator: self.conjugator_inv.clone(),
                conjugator_inv: self.conjugator.clone(),
                transpose: false,
            }
        }
    }

    /// Interpolation nodes of the image, given nodes of the argument.
    pub fn image_nodes(&self, nodes: &[(C64, usize)]) -> Vec<(C64, usize)> {
        nodes
            .iter()
            .map(|&(l, m)| (self.mobius.eval(l), m))
            .collect()
    }

    pub fn apply<'a>(&self, arg: impl Into<MatrixArg<'a>>) -> Result<CMatrix> {
        let arg = arg.into();
        let a = match arg {
            MatrixArg::Raw(a) | MatrixArg::Hinted { matrix: a, .. } => a.clone(),
            MatrixArg::Realized(r) => r.realize(),
        };
        if a.n() != self.conjugator.n() {
            return Err(Error::input(format!(
                "automorphism acts on {}×{} matrices, got {}×{}",
                self.conjugator.n(),
                self.conjugator.n(),
                a.n(),
                a.n()
            )));
        }
        let rho = spectral_radius(&a)?;
        if rho >= 1.0 {
            return Err(Error::Domain(format!(
                "automorphisms act on the spectral unit ball; ρ(A) = {rho}"
            )));
        }
        let mut m = apply_exact(&DiscMap::Mobius(self.mobius), arg)?;
        if self.transpose {
            m = m.transpose();
        }
        Ok(&(&self.conjugator * &m) * &self.conjugator_inv)
    }
}

pub fn omega_automorphism<'a>(aut: &OmegaAut, a: impl Into<MatrixArg<'a>>) -> Result<CMatrix> {
    aut.apply(a)
}

/// `‖σ(F_f(A)) − π_n(f(λ_1), …, f(λ_n))‖_∞` with `λ_i` the computed eigenvalues of `A`.
pub fn equivariance_residual<'a>(
    f: &DiscMap,
    arg: impl Into<MatrixArg<'a>>,
    method: CalculusMethod,
) -> Result<f64> {
    let arg = arg.into();
    let a = match arg {
        MatrixArg::Raw(a) | MatrixArg::Hinted { matrix: a, .. } => a.clone(),
        MatrixArg::Realized(r) => r.realize(),
    };
    let lams = eigenvalues(&a, DEFAULT_ROOT_TOL)?;
    if let Some(l) = lams.iter().find(|l| l.norm() >= 1.0) {
        return Err(Error::Domain(format!(
            "matrix is outside the spectral unit ball (eigenvalue {l})"
        )));
    }
    let fa = match method {
        CalculusMethod::Exact => apply_exact(f, arg)?,
        CalculusMethod::Series => {
            apply_series(f, &a, DEFAULT_SERIES_TOL, DEFAULT_SERIES_MAX_TERMS)?
        }
    };
    let images: Vec<C64> = lams.iter().map(|&l| f.eval(l)).collect();
    Ok(sigma(&fa).max_abs_diff(&pi_n(&images)?))
}

//! The fiber decomposition `Ω_n = ⋃ T_z` and its constructive content.

mod jordan;
mod sample;
mod structure;
mod witness;

pub use jordan::{
    jordan_assemble, lemma5_merge_all, lemma5_perturb, lemma6_realization, lemma6_sample,
    lemma6_sample_from_point, JordanBlockGroup, JordanRealization, JordanSpec,
};
pub use sample::{
    disc_point, gaussian_c64, gaussian_matrix, random_basis, random_derogatory_spec,
    random_in_fiber, random_in_omega, random_nilpotent_spec, random_partition, random_realization,
    random_realization_in_omega, random_spec, random_unitary, rng_from_seed, separated_disc_points,
    DEFAULT_COND_BOUND,
};
pub use structure::{
    eigen_structure, fiber_tangent_dim, fiber_tangent_dim_tol, geometric_multiplicity,
    is_nonderogatory, nonderogatory_via_jacobian, EigenCluster, EigenStructure, StructureTols,
};
pub use witness::{lemma4_witness, t0_spanning_set, Lemma4Witness, NILPOTENT_TOL};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, DEFAULT_ROOT_TOL};
use crate::spectral::{in_gn, in_omega, sigma, SymPoint};

/// A fiber `T_z = {A ∈ Ω_n : σ(A) = z}` for `z ∈ G_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberHandle {
    z: SymPoint,
}

impl FiberHandle {
    pub fn new(z: SymPoint) -> Result<Self> {
        if !in_gn(&z, 0.0)? {
            return Err(Error::Domain(
                "fiber point lies outside the symmetrized polydisc".into(),
            ));
        }
        Ok(FiberHandle { z })
    }

    pub fn point(&self) -> &SymPoint {
        &self.z
    }

    /// Roots `ζ` with `π_n(ζ) = z`.
    pub fn zetas(&self) -> Result<Vec<C64>> {
        self.z.roots(DEFAULT_ROOT_TOL)
    }

    /// `σ(A) = z` to within `tol` (absolute, sup norm) and `A ∈ Ω_n`.
    pub fn contains(&self, a: &CMatrix, tol: f64) -> Result<bool> {
        if a.n() != self.z.n() {
            return Ok(false);
        }
        Ok(sigma(a).max_abs_diff(&self.z) <= tol && in_omega(a, 0.0)?)
    }

    /// The non-derogatory fiber element attached to `basis`.
    pub fn sample(&self, basis: &CMatrix) -> Result<CMatrix> {
        lemma6_sample_from_point(&self.z, basis)
    }
}

//! Computational objects of the spectral unit ball `Ω_n = {A ∈ M_n : ρ(A) < 1}`.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: dense complex matrices, the characteristic polynomial (Faddeev–LeVerrier),
//!   simultaneous polynomial root finding (Aberth–Ehrlich), rank and linear solves.
//! - [`spectral`]: spectral radius, the symmetrization map `σ`, the elementary symmetric map
//!   `π_n`, membership in `Ω_n`, `G_n` and `J_n`, and the analytic Jacobian `σ′(A)`.
//! - [`fibers`]: Jordan/Weyr structure, non-derogatory tests, fiber parametrization,
//!   block-merging perturbations and the nilpotent witness construction.
//! - [`calculus`]: holomorphic self-maps of the disc, jets, the matrix functional calculus
//!   `A ↦ f(A)` by series and by Hermite interpolation, and the known automorphisms of `Ω_n`.

pub mod calculus;
pub mod error;
pub mod fibers;
pub mod linalg;
pub mod spectral;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

pub use calculus::{
    apply_exact, apply_series, equivariance_residual, eval_jet, lemma3_normalized_differential,
    omega_automorphism, CalculusMethod, DiscMap, Jet, MatrixArg, Mobius, OmegaAut,
};
pub use fibers::{
    eigen_structure, fiber_tangent_dim, is_nonderogatory, jordan_assemble, lemma4_witness,
    lemma5_perturb, lemma6_sample, nonderogatory_via_jacobian, random_in_fiber, random_in_omega,
    t0_spanning_set, EigenStructure, FiberHandle, JordanBlockGroup, JordanRealization, JordanSpec,
};
pub use linalg::{char_poly, eigenvalues, poly_roots, rank, CMatrix, Polynomial, RectMatrix};
pub use spectral::{
    discriminant, in_gn, in_jn, in_omega, pi_n, sigma, sigma_jacobian, spectral_radius,
    SigmaJacobian, SymPoint,
};

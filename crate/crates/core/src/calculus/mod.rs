//! Holomorphic self-maps of the disc and the induced maps `F_f` on `Ω_n`.

mod apply;
mod automorphism;
mod differential;
mod discmap;
mod jet;

pub use apply::{
    apply_exact, apply_series, hermite_apply, CalculusMethod, MatrixArg, DEFAULT_SERIES_MAX_TERMS,
    DEFAULT_SERIES_TOL,
};
pub use automorphism::{equivariance_residual, omega_automorphism, OmegaAut};
pub use differential::{
    lemma3_normalized_differential, normalized_differential_matrix, ALPHA_TOL, ORIGIN_TOL,
};
pub use discmap::{
    random_blaschke, random_mobius, Blaschke, DiscMap, Mobius, PowerSeries, SERIES_GUARD_RADIUS,
    SERIES_GUARD_SAMPLES,
};
pub use jet::{eval_jet, Jet};

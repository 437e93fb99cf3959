//! Dense complex linear algebra: the substrate every other module consumes.

mod elim;
mod matrix;
mod poly;

pub use elim::{
    conjugate, determinant, inverse, null_space, null_space_scaled, rank, rank_scaled, solve,
    DEFAULT_RANK_TOL, SINGULAR_TOL,
};
pub(crate) use matrix::vec_norm;
pub use matrix::{mat_arith, CMatrix, DenseView, MatOp, RectMatrix};
pub use poly::{
    char_poly, char_poly_uncertainty, eigenvalues, poly_roots, poly_roots_with_uncertainty,
    Polynomial, DEFAULT_ROOT_TOL,
};

use thiserror::Error;

/// Errors raised by the spectral-ball routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed or inconsistent input (dimension mismatch, non-finite entry, bad spec).
    #[error("input error: {0}")]
    Input(String),
    /// The argument lies outside the domain where the map is defined, e.g. `ρ(A) ≥ 1`.
    #[error("domain error: {0}")]
    Domain(String),
    /// A documented precondition of the operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// An iterative or tolerance-driven computation could not reach its target.
    #[error("numerical error: {message} (best residual {residual:e})")]
    Numerical { message: String, residual: f64 },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>, residual: f64) -> Self {
        Error::Numerical {
            message: msg.into(),
            residual,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use std::path::PathBuf;

/// Exit code for a run in which every suite passed.
pub const EXIT_PASS: i32 = 0;
/// Exit code when at least one suite failed.
pub const EXIT_FAIL: i32 = 1;
/// Exit code for malformed input or configuration.
pub const EXIT_INPUT: i32 = 2;
/// Exit code for an internal numerical failure.
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] spectral_ball::Error),
}

impl VerifyError {
    pub fn input(msg: impl Into<String>) -> Self {
        VerifyError::Input(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            VerifyError::Core(spectral_ball::Error::Numerical { .. }) => EXIT_NUMERICAL,
            _ => EXIT_INPUT,
        }
    }
}

pub type Result<T> = std::result::Result<T, VerifyError>;

use thiserror::Error;

/// Errors raised by the transform, the Bellman toolkit and the file formats.
#[derive(Debug, Error)]
pub enum NlftError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("input too large: {0}")]
    InputTooLarge(String),

    #[error("resolution mismatch: frequency exponent {freq_exponent} is below cell exponent {cell_exponent}")]
    ResolutionMismatch {
        cell_exponent: u32,
        freq_exponent: u32,
    },

    #[error("expected {expected} values (d^(support_exponent + cell_exponent)), found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = NlftError> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> NlftError {
    NlftError::InvalidArgument(msg.into())
}

//! Crate-wide error type.

/// Errors produced by codebook construction, decoding, and simulation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Operands have incompatible dimensions.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// A matrix required to be invertible is singular.
    #[error("singular matrix")]
    Singular,
    /// An argument is outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A linear system has no solution.
    #[error("inconsistent linear system")]
    Inconsistent,
    /// A signal could not be reconstructed as a valid codeword.
    #[error("decode failure: {0}")]
    DecodeFailure(String),
    /// Invalid configuration or input file.
    #[error("config error: {0}")]
    Config(String),
    /// An operation would exceed its intended resource envelope.
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

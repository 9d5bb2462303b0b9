use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A model failed construction-time validation.
    #[error("model validation error: {0}")]
    Validation(String),

    /// The operation is not defined for this model variant.
    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// Numerical integration or root search did not converge.
    #[error("did not converge: {0}")]
    NonConvergent(String),

    /// Malformed configuration input.
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

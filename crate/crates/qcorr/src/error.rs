//! Error type shared by all modules.

use thiserror::Error;

/// Errors surfaced by the library.
///
/// Diagnostic payloads are `f64` regardless of the working scalar so the
/// error type stays non-generic.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("not a state: spectral value {value} at index {index} is negative beyond tolerance")]
    NotAState { index: String, value: f64 },

    #[error("normalization error: identity coefficient is {got}, must be 1")]
    Normalization { got: f64 },

    #[error("infinite divergence: support violated at index {index}")]
    InfiniteDivergence { index: String },

    #[error("singular map: zero eigenvalue at index {index}")]
    SingularMap { index: String },

    #[error("unbounded family: witness has no positive eigenvalue")]
    UnboundedFamily,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("sampling error: Sinkhorn normalization did not converge in {iterations} iterations")]
    SinkhornNonConvergence { iterations: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the series solvers, oracles and problem loader.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A necessary condition for existence of a solution fails (e.g. `Ξ_0 ≠ 0`
    /// for a first-kind equation).
    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("kernel structure not supported at n = {n}: {reason}")]
    StructureNotSupported { n: usize, reason: String },

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("fixed-point iteration did not converge at grid node {node}")]
    StepFailure { node: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

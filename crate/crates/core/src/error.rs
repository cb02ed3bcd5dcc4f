use thiserror::Error;

/// Errors raised by group construction, solvers, reductions and verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("graph contains a directed cycle")]
    CycleDetected,
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

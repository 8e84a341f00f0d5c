use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("series did not converge within {max_terms} terms")]
    Convergence { max_terms: usize },
    #[error("leading-order fit failed: {0}")]
    Fit(String),
    #[error("root finding failed: {0}")]
    Root(String),
    #[error("integer overflow while evaluating {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

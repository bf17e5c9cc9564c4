use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured size budget would be exceeded.
    #[error("resource error: {0}")]
    Resource(String),
    /// The inputs are valid but the operation has no supported route for them
    /// (for example, no IDF prime exists for `(d, k)`).
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// An elimination collapsed (zero resultant); the locus is degenerate.
    #[error("degenerate locus: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the domain of an operation (bad index, bad radii, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// Inverting a zero element.
    #[error("singular element: {0}")]
    Singular(String),

    /// A non-finite value appeared during evaluation.
    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("no convergence: {0}")]
    Convergence(String),

    /// The field vanishes where a normalising quantity is required.
    #[error("degenerate field: {0}")]
    DegenerateField(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

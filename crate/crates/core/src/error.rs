use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("malformed structure: {0}")]
    Shape(String),
    #[error("subspace is not contained in the ambient subspace")]
    NotContained,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("input is not verified: {0}")]
    NotVerified(String),
    #[error("unsupported cochain degree {0}")]
    UnsupportedDegree(i32),
    #[error("matrix is singular")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_len(what: &str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "{what}: expected {expected}, found {found}"
        )))
    }
}

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("division by zero or non-invertible element: {0}")]
    NotInvertible(String),
    #[error("conductor mismatch: {0} vs {1}")]
    Conductor(u32, u32),
    #[error("fan validation failed: {0:?}")]
    Validation(Vec<String>),
    #[error("no valid parameter basis found: {0}")]
    PBasisSearch(String),
    #[error("unsupported wall-crossing configuration: {0}")]
    UnsupportedWall(String),
    #[error("brane construction failed: {0}")]
    Brane(String),
    #[error("series operation failed: {0}")]
    Series(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("identification mismatch: {0}")]
    Mismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

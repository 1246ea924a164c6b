use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("element is not nilpotent")]
    NotNilpotent,
    #[error("not a weight vector")]
    NotWeightVector,
    #[error("search budget exhausted: {0}")]
    Exhausted(String),
    #[error("missing data: {0}")]
    MissingData(String),
}

pub type Result<T> = std::result::Result<T, Error>;

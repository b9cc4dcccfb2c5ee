use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("field mismatch: sqrt({0}) and sqrt({1}) cannot be mixed")]
    FieldMismatch(u64, u64),
    #[error("negative discriminant {0}")]
    NegativeDiscriminant(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("not a rational isomorphism: {0}")]
    NotRationalIso(String),
    #[error("truncation order N={n} is too small ({reason}); raise N")]
    RaiseN { n: usize, reason: String },
    #[error("input is decomposable: {0}")]
    Decomposable(String),
    #[error("relation violated: {0}")]
    Relation(String),
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

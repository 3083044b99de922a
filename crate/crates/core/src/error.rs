use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error("density must be positive, got {0}")]
    NonPositiveDensity(f64),
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid scheme configuration: {0}")]
    InvalidScheme(String),
    #[error("inconsistent initial data: {0}")]
    InconsistentInitialData(String),
    #[error("zero pivot in tridiagonal solve at row {0}")]
    ZeroPivot(usize),
    #[error("invalid boundary specification: {0}")]
    InvalidBoundary(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;

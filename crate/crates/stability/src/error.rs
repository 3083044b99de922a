use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StabilityError {
    #[error("all polynomial coefficients are zero")]
    ZeroPolynomial,
    #[error("non-finite polynomial coefficient")]
    NonFinite,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, StabilityError>;

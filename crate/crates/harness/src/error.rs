use apem_core::CoreError;
use apem_stability::StabilityError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Stability(#[from] StabilityError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl HarnessError {
    /// 2 for configuration errors, 3 for numerical failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 2,
            HarnessError::Numerical(_) => 3,
            HarnessError::Core(e) => match e {
                CoreError::Numerical(_) | CoreError::NonFinite(_) | CoreError::ZeroPivot(_) => 3,
                CoreError::NonPositiveDensity(_) => 3,
                _ => 2,
            },
            HarnessError::Stability(e) => match e {
                StabilityError::NonFinite => 3,
                _ => 2,
            },
            HarnessError::Io(_) | HarnessError::Json(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;

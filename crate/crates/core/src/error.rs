use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular matrix")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{element} is not in {group}")]
    NotInGroup { element: String, group: String },
    #[error("budget exhausted: {0}")]
    Budget(String),
    /// A mathematical check failed; the construction cannot be certified.
    #[error("check failed at {stage}: {detail}")]
    Check { stage: String, detail: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn check(stage: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Check {
            stage: stage.into(),
            detail: detail.into(),
        }
    }

    /// True for failed mathematical checks, as opposed to usage or resource errors.
    pub fn is_check_failure(&self) -> bool {
        matches!(self, Error::Check { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

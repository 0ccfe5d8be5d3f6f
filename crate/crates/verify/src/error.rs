use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl VerifyError {
    /// Process exit status: 2 for configuration problems, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            VerifyError::UnknownCheck(_) | VerifyError::UnknownSuite(_) | VerifyError::ConfigInvalid(_) => 2,
            VerifyError::Io(_) | VerifyError::Json(_) => 1,
        }
    }
}

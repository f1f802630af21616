use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad parameters; exit status 1.
    #[error("invalid input: {0}")]
    Validation(String),
    /// A checked invariant failed; exit status 2.
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            _ => 2,
        }
    }
}

/// Errors from the core are all parameter or precondition failures.
impl From<hypcover_core::Error> for CliError {
    fn from(e: hypcover_core::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Group(#[from] zakframes_group::GroupError),

    #[error(transparent)]
    Core(#[from] zakframes_core::CoreError),

    #[error(transparent)]
    Oracle(#[from] zakframes_oracle::OracleError),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("invalid signal file {path}: {reason}")]
    BadSignal { path: String, reason: String },

    #[error("spec is missing {0}")]
    MissingField(&'static str),

    #[error("invalid tolerance {0}: must be positive")]
    BadTolerance(f64),
}

pub type Result<T> = std::result::Result<T, CliError>;

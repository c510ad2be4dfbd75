use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] apt_core::Error),
    #[error("manifest: {0}")]
    Manifest(String),
    #[error("golden tables: {0}")]
    Golden(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

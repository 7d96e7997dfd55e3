use std::path::PathBuf;

/// Failures surfaced by the sweep, IO and command-line layers.
#[derive(Debug, thiserror::Error)]
pub enum AppError {
    /// Invalid configuration, with the JSON path of the offending value.
    #[error("{path}: {message}")]
    Config { path: String, message: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Model(#[from] giantring_core::Error),
    /// The independent evaluation paths disagree beyond the tolerance.
    #[error("{0}")]
    Disagreement(String),
    #[error("{0}")]
    Usage(String),
}

impl AppError {
    pub fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        AppError::Config {
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        AppError::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code: 1 for invalid input or IO, 2 for numerical
    /// failures and oracle disagreement.
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Model(e) if e.is_numerical() => 2,
            AppError::Disagreement(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T, E = AppError> = std::result::Result<T, E>;

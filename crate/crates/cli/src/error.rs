use std::path::PathBuf;

use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] multicentric::Error),
    #[error("{0}")]
    Usage(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("cannot parse {what} {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid JSON in {}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Machine-readable form written to stderr on failure.
#[derive(Debug, Serialize)]
pub struct ErrorReport {
    pub error: String,
    pub message: String,
}

impl CliError {
    pub fn parse(what: &'static str, input: &str, reason: impl Into<String>) -> Self {
        CliError::Parse {
            what,
            input: input.to_string(),
            reason: reason.into(),
        }
    }

    pub fn kind(&self) -> String {
        match self {
            CliError::Core(e) => {
                let debug = format!("{e:?}");
                let end = debug.find(|c: char| !c.is_alphanumeric()).unwrap_or(debug.len());
                debug[..end].to_string()
            }
            CliError::Usage(_) => "Usage".into(),
            CliError::CheckFailed(_) => "CheckFailed".into(),
            CliError::Parse { .. } => "Parse".into(),
            CliError::Io { .. } => "Io".into(),
            CliError::Json { .. } => "Json".into(),
        }
    }

    pub fn report(&self) -> ErrorReport {
        ErrorReport {
            error: self.kind(),
            message: self.to_string(),
        }
    }
}

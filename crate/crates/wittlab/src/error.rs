use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path} is not valid input: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Core(#[from] wittlab_core::Error),
    #[error("cache: {0}")]
    Cache(String),
}

impl CliError {
    /// 2 for problems with the invocation or its input files, 1 for
    /// failures of the computation itself.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Parse { .. } => 2,
            CliError::Core(_) | CliError::Cache(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Parse { .. } => "parse",
            CliError::Core(_) => "computation",
            CliError::Cache(_) => "cache",
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

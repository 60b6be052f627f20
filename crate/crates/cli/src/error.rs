use diameter_core::DiameterError;
use diameter_core::io::ReadError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Invalid flag combination or value; exit code 2.
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Input(#[from] ReadError),

    #[error(transparent)]
    Algorithm(#[from] DiameterError),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io { context: context.into(), source }
    }
}

use std::io;

/// Failures surfaced by the command-line tool, split by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, malformed config, or parameters outside their domain.
    #[error("{0}")]
    Config(String),
    /// Reading or writing a file failed.
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Io(_) => 2,
        }
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }
}

impl From<relayec_core::Error> for CliError {
    fn from(e: relayec_core::Error) -> Self {
        match e {
            relayec_core::Error::Domain(msg) => CliError::Config(msg),
            relayec_core::Error::Io(e) => CliError::Io(e.to_string()),
            relayec_core::Error::Csv(e) if e.is_io_error() => CliError::Io(e.to_string()),
            relayec_core::Error::Csv(e) => CliError::Config(format!("malformed sample file: {e}")),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

use std::fmt;

/// Failures mapped onto the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or a configuration the model rejects. Exit 2.
    Usage(String),
    /// The output could not be written. Exit 3.
    Io(String),
    /// Two independent routes disagree beyond tolerance. Exit 1.
    Consistency(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Consistency(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Consistency(m) => write!(f, "consistency check failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<stimsig_core::Error> for CliError {
    fn from(e: stimsig_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

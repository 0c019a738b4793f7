use partial_profile::Error as CoreError;

/// Failures of a command, each with a fixed exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Unavailable(String),
    #[error("{0}")]
    Certificate(String),
}

impl CliError {
    /// 0 success, 1 usage or input error, 2 nothing constructible, 3 certificate failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) | CliError::Io(_) => 1,
            CliError::Unavailable(_) => 2,
            CliError::Certificate(_) => 3,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let msg = e.to_string();
        match e {
            CoreError::NotAvailable(_)
            | CoreError::Generator(_)
            | CoreError::DuplicateProfiles { .. }
            | CoreError::NotPaired(_) => CliError::Unavailable(msg),
            CoreError::NotOptimal(_) => CliError::Certificate(msg),
            _ => CliError::Usage(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

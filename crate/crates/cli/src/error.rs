use thiserror::Error;

/// Process exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Exit {
    Ok = 0,
    VerifyFailed = 1,
    Parse = 2,
    Precondition = 3,
    Internal = 4,
    Unresolved = 5,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Error)]
#[error("{message}")]
pub struct CliError {
    pub exit: Exit,
    pub message: String,
}

impl CliError {
    pub fn new(exit: Exit, message: impl Into<String>) -> Self {
        CliError { exit, message: message.into() }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Self::new(Exit::Parse, message)
    }
}

impl From<brieskorn::Error> for CliError {
    fn from(e: brieskorn::Error) -> Self {
        use brieskorn::Error as E;
        let exit = match &e {
            _ if e.is_parse_error() => Exit::Parse,
            E::InvalidRing(_) => Exit::Parse,
            E::NotHomogeneous
            | E::DegreeTooLow { .. }
            | E::NotIsolated
            | E::InvalidParameter(_) => Exit::Precondition,
            _ => Exit::Internal,
        };
        CliError::new(exit, e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

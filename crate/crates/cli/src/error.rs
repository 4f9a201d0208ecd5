use std::fmt;

/// Exit-code classes: 1 for bad input, 2 for failures while running.
#[derive(Debug)]
pub enum CliError {
    Validation(anyhow::Error),
    Runtime(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(e) => write!(f, "error: {e:#}"),
            CliError::Runtime(e) => write!(f, "failed: {e:#}"),
        }
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

pub fn validation(e: impl Into<anyhow::Error>) -> CliError {
    CliError::Validation(e.into())
}

pub fn runtime(e: impl Into<anyhow::Error>) -> CliError {
    CliError::Runtime(e.into())
}

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("line {line}, column {col}: in `{fact}`: {msg}")]
    Fact {
        line: usize,
        col: usize,
        fact: String,
        msg: String,
    },

    #[error("`{command}` does not apply to {species} networks (expected {expected})")]
    Species {
        command: String,
        species: String,
        expected: String,
    },

    #[error("{path}: {msg}")]
    Io { path: String, msg: String },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] attneg_core::Error),
}

impl CliError {
    /// 3 when a search-space guard tripped, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(attneg_core::Error::GuardExceeded { .. }) => 3,
            _ => 1,
        }
    }
}

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// A problem with the run configuration, located by its field path.
    #[error("{path}: {message}")]
    Config { path: String, message: String },

    #[error("cannot read {path}: {message}")]
    Read { path: String, message: String },

    #[error(transparent)]
    Library(#[from] laxalg::Error),
}

impl CliError {
    pub fn config(path: impl Into<String>, message: impl ToString) -> Self {
        CliError::Config { path: path.into(), message: message.to_string() }
    }

    /// Process exit status for this error. Every error is a configuration
    /// problem from the caller's point of view.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

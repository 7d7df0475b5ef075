use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input text: CSV documents, manifests, model files, prediction files.
    #[error("{context}: {message}")]
    Parse { context: String, message: String },

    /// Structurally valid input that violates a data-level requirement.
    #[error("invalid data: {0}")]
    Data(String),

    /// A caller-supplied parameter is out of its allowed range.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("training set is empty")]
    EmptyTrainingSet,

    #[error("row has {found} cells but the model expects {expected}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("index {index} out of range (limit {limit})")]
    OutOfRange { index: usize, limit: usize },

    #[error("bootstrap gave up after {0} degenerate resamples")]
    RetryCapExceeded(usize),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            context: context.into(),
            message: message.into(),
        }
    }

    pub(crate) fn data(message: impl Into<String>) -> Self {
        Error::Data(message.into())
    }

    pub(crate) fn arg(message: impl Into<String>) -> Self {
        Error::InvalidArgument(message.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for the command-line front end: 1 for usage
    /// errors, 2 for everything caused by the data.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidArgument(_) => 1,
            _ => 2,
        }
    }
}

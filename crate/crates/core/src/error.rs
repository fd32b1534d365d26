use thiserror::Error;

/// Errors raised by the library operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("insufficient prefix at step {step}: {detail}")]
    InsufficientPrefix { step: usize, detail: String },

    #[error("degree {requested} exceeds the horizon {horizon}")]
    Horizon { requested: usize, horizon: usize },

    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),

    #[error("not evidenced: {0}")]
    NotEvidenced(String),

    #[error("letter {letter} is not nilpotent up to horizon {horizon}")]
    NotNilpotent { letter: usize, horizon: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("field must have characteristic other than 2: {0}")]
    Characteristic(String),

    #[error("io error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

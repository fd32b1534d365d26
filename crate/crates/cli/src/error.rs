use liegrowth::Error;
use thiserror::Error;

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Validation(String),

    #[error("stage `{stage}` failed: {source} (hint: {hint})")]
    Stage { stage: String, source: Error, hint: &'static str },

    #[error("check failed: {0}")]
    Assertion(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 0 success, 1 validation, 2 stage failure, 3 failed check.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Stage { .. } | CliError::Io(_) => 2,
            CliError::Assertion(_) => 3,
        }
    }

    /// Bad arguments become validation errors, everything else a failure of
    /// `stage`.
    pub fn from_lib(stage: &str, e: Error) -> CliError {
        match e {
            Error::Config(m) | Error::Argument(m) | Error::Parse(m) => CliError::Validation(m),
            e => CliError::Stage { stage: stage.to_string(), hint: remediation(&e), source: e },
        }
    }
}

pub fn remediation(e: &Error) -> &'static str {
    match e {
        Error::Horizon { .. } => "raise the horizon N",
        Error::InsufficientPrefix { .. } | Error::NotEvidenced(_) => "raise the prefix length L",
        Error::InsufficientSamples(_) => "extend the grid or the horizon",
        Error::NotNilpotent { .. } => "raise the horizon N or use another word",
        Error::Domain(_) => "start the grid above the level's domain bound",
        Error::Characteristic(_) => "use Q or an odd prime field",
        Error::Io(_) => "check the output and cache directories",
        _ => "check the inputs",
    }
}

/// `map_err` adaptor tagging library errors with a stage name.
pub fn at(stage: &'static str) -> impl Fn(Error) -> CliError {
    move |e| CliError::from_lib(stage, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::from_lib("x", Error::Parse("p".into())).exit_code(), 1);
        let e = CliError::from_lib("words", Error::Horizon { requested: 5, horizon: 3 });
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains("raise the horizon N"));
        assert_eq!(CliError::Assertion("a".into()).exit_code(), 3);
    }
}

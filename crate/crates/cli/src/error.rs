use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },

    #[error("unknown configuration key `{0}`")]
    UnknownKey(String),

    #[error("missing required key `{0}`")]
    MissingKey(&'static str),

    #[error("invalid value `{value}` for `{key}`: {reason}")]
    InvalidValue { key: String, value: String, reason: String },

    #[error("cannot read {path}: {source}")]
    ReadConfig {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// Validation report had failures; the report itself was already printed.
    #[error("model validation failed: {0}")]
    Validation(String),

    #[error(transparent)]
    Model(#[from] lrm_core::Error),

    #[error("output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// `2` for anything wrong with the invocation or the configuration
    /// document, `1` for a well-formed run the numerics refuse.
    pub fn exit_code(&self) -> u8 {
        use lrm_core::Error as E;
        match self {
            CliError::Usage(_)
            | CliError::Syntax { .. }
            | CliError::UnknownKey(_)
            | CliError::MissingKey(_)
            | CliError::InvalidValue { .. }
            | CliError::ReadConfig { .. } => 2,
            // Constructor checks on parameter values are schema errors.
            CliError::Model(E::InvalidParameter { .. } | E::NotPowerOfTwo(_) | E::MaturityTooShort { .. }) => 2,
            CliError::Validation(_) | CliError::Model(_) | CliError::Io(_) => 1,
        }
    }
}

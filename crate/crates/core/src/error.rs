use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Broad failure class, used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Validation,
    Parameter,
}

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input. `at` names the offending location (row/column or entry).
    #[error("{at}: {message}")]
    Syntax { at: String, message: String },

    #[error("{context}: {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },

    #[error("{context}: {source}")]
    Csv {
        context: String,
        #[source]
        source: csv::Error,
    },

    /// A factor id that the catalog in use does not define.
    #[error("{at}: factor `{id}` is not in the catalog")]
    UnknownFactor { at: String, id: String },

    /// Inputs that parse but do not fit together.
    #[error("{0}")]
    Invalid(String),

    /// Level partitioning stopped assigning factors before all were placed.
    #[error("level partitioning made no progress with {} factor(s) left: {}", remaining.len(), remaining.join(", "))]
    NoProgress { remaining: Vec<String> },

    #[error("invalid parameter: {0}")]
    Parameter(String),
}

impl Error {
    pub(crate) fn syntax(at: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Syntax {
            at: at.into(),
            message: message.into(),
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Syntax { .. } | Error::Json { .. } | Error::Csv { .. } => ErrorClass::Parse,
            Error::UnknownFactor { .. } | Error::Invalid(_) | Error::NoProgress { .. } => ErrorClass::Validation,
            Error::Parameter(_) => ErrorClass::Parameter,
        }
    }
}

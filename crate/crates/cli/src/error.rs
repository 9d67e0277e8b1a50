use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown dataset {0:?}: not a built-in name (peres33, cabello18) or an existing file")]
    UnknownDataset(String),
    #[error("malformed dataset {path}: {message}")]
    MalformedDataset { path: PathBuf, message: String },
    #[error("malformed program {path}: {message}")]
    MalformedProgram { path: PathBuf, message: String },
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Numeric(_) => 1,
            _ => 2,
        }
    }
}

macro_rules! numeric_from {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                Self::Numeric(e.to_string())
            }
        })*
    };
}

numeric_from!(
    qfoundry_core::ks::KsError,
    qfoundry_core::exact::GeometryError,
    qfoundry_core::quantum::QuantumError,
    qfoundry_core::mkc::MkcError,
    qfoundry_core::bell::BellError
);

impl From<qfoundry_core::logic::LogicError> for CliError {
    fn from(e: qfoundry_core::logic::LogicError) -> Self {
        use qfoundry_core::logic::LogicError;
        match e {
            LogicError::TooManyElements(_) | LogicError::UnknownVariant(_) => Self::Usage(e.to_string()),
            other => Self::Numeric(other.to_string()),
        }
    }
}

use thiserror::Error;

use crate::primitives::Domain;

pub type Result<T, E = GpError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum GpError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("domain mismatch: model works on {model:?} values but the problem expects {problem:?}")]
    DomainMismatch { model: Domain, problem: Domain },

    #[error("size limit exceeded: {what} needs {requested} inputs, at most {limit} are supported")]
    SizeLimit {
        what: String,
        requested: usize,
        limit: usize,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl GpError {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        GpError::Config(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        GpError::Parse {
            line,
            message: msg.into(),
        }
    }
}

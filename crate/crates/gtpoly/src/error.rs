use thiserror::Error;

/// Crate-wide error type.
///
/// `Malformed` covers inputs that are structurally broken (ragged arrays,
/// unparsable numbers, bad files) as opposed to well-formed inputs that fail
/// a mathematical precondition, which map to `Domain` or `Validation`.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pattern fails GT validation: {0}")]
    Validation(crate::pattern::Violation),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }

    pub fn dimension(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Exit code for the command line front end: 2 for malformed input,
    /// 1 for analysis-level failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Malformed(_) | Error::Io(_) | Error::Json(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

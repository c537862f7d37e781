use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed configuration text.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A parameter is outside its admissible range.
    #[error("invalid value for `{key}`: {msg}")]
    Validation { key: String, msg: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Geometry produced an all-zero GUE gain row at some AP.
    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("thread pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn validation(key: &str, msg: impl Into<String>) -> Self {
        Error::Validation {
            key: key.to_string(),
            msg: msg.into(),
        }
    }

    /// Process exit status: 1 for configuration problems, 2 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Json(_) => 2,
            _ => 1,
        }
    }
}

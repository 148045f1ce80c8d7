use thiserror::Error;

/// Errors produced by the temprel library.
#[derive(Debug, Error)]
pub enum TemprelError {
    /// Bracketed-tree syntax error; `offset` is a byte offset into the input.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// Invalid configuration (feature strings, marker sets, flag combinations).
    #[error("configuration error: {0}")]
    Config(String),

    /// Malformed or unusable input data (corpora, instance files, lexicons).
    #[error("data error: {0}")]
    Data(String),

    /// Model construction or application failure.
    #[error("model error: {0}")]
    Model(String),

    /// An internal consistency check failed; indicates a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl TemprelError {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        TemprelError::Parse {
            offset,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, TemprelError>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, GdlError>;

#[derive(Debug, Error)]
pub enum GdlError {
    #[error("zero inverse")]
    ZeroInverse,

    #[error("element {value} out of range for GF({q})")]
    OutOfRange { value: u32, q: u32 },

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    /// An enumeration or dense system would exceed the configured cap.
    #[error("resource cap exceeded: {what} needs {needed} objects, cap is {cap}")]
    CapExceeded { what: String, needed: u128, cap: u128 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Raised when an internal cross-check fails; signals a bug, not bad input.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("not a {d}-design: {d}-space #{index} lies in {count} members, expected {expected}")]
    NotADesign { d: usize, index: usize, count: u64, expected: u64 },

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl GdlError {
    pub fn param(msg: impl Into<String>) -> Self {
        GdlError::InvalidParameter(msg.into())
    }
}

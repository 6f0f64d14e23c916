use thiserror::Error;

/// Errors reported for inputs that a caller cannot rule out statically.
///
/// Contract violations that only buggy calling code can produce (team index
/// out of range, flipping a match against itself) panic instead and are
/// documented on the method that panics.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    /// Malformed tournament text. Positions are 1-based; `col` points at the
    /// first character of the offending token.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// A structurally well-formed request that names something that does not
    /// exist or combines parameters that cannot go together.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A request that is valid in shape but outside the sizes this library
    /// can evaluate (bracket rules off powers of two, enumeration past the
    /// index width).
    #[error("unsupported size: {0}")]
    UnsupportedSize(String),
}

impl Error {
    pub(crate) fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the library.
///
/// Contract violations (bad indices, mismatched lengths, non-ancestor
/// arguments) are reported as errors rather than panics so the CLI can map
/// them to exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bit string length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("bad matrix dimensions: expected {expected}, got {rows}x{cols}")]
    BadDimensions {
        expected: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("{what} {index} out of range (bound {bound})")]
    OutOfRange {
        what: &'static str,
        index: u64,
        bound: u64,
    },

    #[error("color {color} out of range for sigma {sigma}")]
    ColorOutOfRange { color: usize, sigma: usize },

    #[error("node {u} is not an ancestor of node {v}")]
    NotAncestor { u: usize, v: usize },

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("not an SLP: {0}")]
    NotAnSlp(String),

    #[error("string too long: expansion exceeds 2^63-1 characters")]
    StringTooLong,

    #[error("refusing to expand {len} characters (limit {limit})")]
    ExpansionRefused { len: u64, limit: u64 },

    #[error("malformed SLP file, line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("empty input")]
    EmptyInput,

    #[error("empty pattern")]
    EmptyPattern,

    #[error("invalid recipe: {0}")]
    InvalidRecipe(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Error {
        Error::Io(e.to_string())
    }
}

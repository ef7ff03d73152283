use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Caller supplied a value outside the domain of the operation.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A runtime or resource guard rejected the request.
    #[error("guard violated: {0}")]
    Guard(String),

    #[error("coordinate {0} does not fit in 32 bits")]
    CoordinateOutOfRange(i64),

    #[error("degenerate triangle: {0}")]
    Degenerate(String),

    #[error("weighted shape set is empty")]
    EmptySet,

    /// A floating-point construction failed its own verification step.
    #[error("precision failure: {0}")]
    Precision(String),

    /// An internal consistency check failed; indicates a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Short stable tag used in machine-readable error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::Guard(_) => "guard",
            Error::CoordinateOutOfRange(_) => "out-of-range",
            Error::Degenerate(_) => "degenerate",
            Error::EmptySet => "empty-set",
            Error::Precision(_) => "precision",
            Error::Invariant(_) => "invariant",
            Error::Config(_) => "config",
            Error::Parse(_) => "parse",
            Error::Io { .. } => "io",
        }
    }
}

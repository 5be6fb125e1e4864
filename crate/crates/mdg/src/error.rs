use std::fmt;
use std::io;

/// Errors from the command layer: library failures, IO and malformed input.
#[derive(Debug)]
pub enum MdgError {
    Core(mdg_core::Error),
    Io(io::Error),
    Json(serde_json::Error),
    /// Malformed graph file; `line` is 1-based.
    Parse { line: usize, message: String },
    /// Arguments that are well-formed but cannot be served.
    Unsupported(String),
}

pub type Result<T, E = MdgError> = std::result::Result<T, E>;

impl fmt::Display for MdgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MdgError::Core(e) => write!(f, "{e}"),
            MdgError::Io(e) => write!(f, "i/o error: {e}"),
            MdgError::Json(e) => write!(f, "json error: {e}"),
            MdgError::Parse { line, message } => write!(f, "parse error on line {line}: {message}"),
            MdgError::Unsupported(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for MdgError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            MdgError::Core(e) => Some(e),
            MdgError::Io(e) => Some(e),
            MdgError::Json(e) => Some(e),
            _ => None,
        }
    }
}

impl From<mdg_core::Error> for MdgError {
    fn from(e: mdg_core::Error) -> Self {
        MdgError::Core(e)
    }
}

impl From<io::Error> for MdgError {
    fn from(e: io::Error) -> Self {
        MdgError::Io(e)
    }
}

impl From<serde_json::Error> for MdgError {
    fn from(e: serde_json::Error) -> Self {
        MdgError::Json(e)
    }
}

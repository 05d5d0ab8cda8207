use std::fmt;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument was outside the documented domain of the operation.
    Domain(String),
    /// A NaN or infinity appeared where finite data is required.
    NonFinite(&'static str),
    /// A column of the input could not be orthonormalized against the
    /// previous ones (numerically dependent columns).
    RankDeficient { column: usize, residual: f64 },
    /// An exhaustive enumeration was requested above its size cap.
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    /// The requested mode is not available for these inputs
    /// (e.g. an exact operator norm outside p ∈ {1, 2}).
    Unsupported(String),
    /// An exactly computed quantity contradicts a proven inequality.
    /// This can only happen through an implementation bug, never through
    /// unlucky inputs, so it is surfaced as a hard error.
    TheoremViolation(String),
    /// A numerical routine failed to converge or produced invalid output.
    Numeric(String),
    /// Filesystem or byte-format failure in the matrix exchange format.
    Io(String),
    /// Malformed text input (CSV import, frequency lists, ...).
    Format(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::NonFinite(what) => write!(f, "non-finite entries in {what}"),
            Error::RankDeficient { column, residual } => write!(
                f,
                "rank deficiency: column {column} has residual norm {residual:.3e}"
            ),
            Error::CapExceeded { what, size, cap } => {
                write!(f, "{what} size {size} exceeds enumeration cap {cap}")
            }
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
            Error::TheoremViolation(msg) => {
                write!(f, "theorem violation (implementation bug): {msg}")
            }
            Error::Numeric(msg) => write!(f, "numeric failure: {msg}"),
            Error::Io(msg) => write!(f, "io error: {msg}"),
            Error::Format(msg) => write!(f, "format error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

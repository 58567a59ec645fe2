//! Crate-wide error type.
//!
//! Errors are deliberately coarse: each variant corresponds to one of the
//! failure classes a caller can meaningfully react to (and that the CLI maps
//! to distinct exit codes). Geometric preconditions that the library itself
//! guarantees internally surface as [`Error::Internal`] so that a violated
//! invariant is never silently converted into a wrong number.

use std::fmt;

/// Alias used by every fallible operation in this crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input data was structurally unusable (wrong lengths, empty sets,
    /// non-integers, unknown JSON fields, bad parameters).
    Input(String),
    /// The polytope is not smooth; carries the offending vertex in the
    /// coordinates the caller supplied.
    NotSmooth { vertex: Vec<num_bigint::BigInt> },
    /// A mathematical hypothesis of the requested operation fails (e.g. a
    /// point configuration missing a vertex of its hull, or a formula applied
    /// outside its family).
    Hypothesis(String),
    /// An internal cross-check failed; indicates a bug, not bad input.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Input(msg) => write!(f, "invalid input: {msg}"),
            Error::NotSmooth { vertex } => {
                let coords: Vec<String> = vertex.iter().map(|c| c.to_string()).collect();
                write!(f, "polytope is not smooth at vertex ({})", coords.join(", "))
            }
            Error::Hypothesis(msg) => write!(f, "hypothesis violated: {msg}"),
            Error::Internal(msg) => write!(f, "internal consistency failure: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl Error {
    /// Convenience constructor for [`Error::Input`].
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    /// Convenience constructor for [`Error::Internal`].
    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

use alloc::string::String;
use core::fmt;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input (bad bit character, bad coin character, ...).
    Invalid(String),
    /// A query outside the domain of the requested operation.
    Domain(String),
    /// A request beyond a configured enumeration cap.
    Resource(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Invalid(msg) => write!(f, "invalid input: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Resource(msg) => write!(f, "resource limit: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

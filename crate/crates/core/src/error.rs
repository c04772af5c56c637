use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands or parameters that do not fit together (e.g. elements of different genera).
    #[error("configuration error: {0}")]
    Config(String),
    /// A caller violated an operation's precondition.
    #[error("usage error: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// Two computations that must agree did not.
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

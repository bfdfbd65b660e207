use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input exceeds a documented size bound.
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    /// An input lies outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An internal consistency check failed.
    #[error("internal consistency error: {0}")]
    Internal(String),

    /// The dimension of a cusp symbol could not be resolved.
    #[error("unknown dimension for symbol {0}")]
    UnknownDimension(String),

    /// Hecke eigenvalue data is missing for a symbol at a prime.
    #[error("unknown Hecke data for {symbol} at p = {prime}")]
    UnknownHecke { symbol: String, prime: u64 },

    /// A parameter factor has no closed-form spin evaluation.
    #[error("no closed form for factor {0}")]
    NoClosedForm(String),

    /// A forms table could not be ingested.
    #[error("ingestion error at {location}: {message}")]
    Ingestion { location: String, message: String },

    /// A computation needs table data that is not available.
    #[error("incomplete data, missing families: {}", .0.join(", "))]
    Incomplete(Vec<String>),
}

/// Library result type.
pub type Result<T> = std::result::Result<T, Error>;

//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// The input is missing a mandatory column or the header cannot be used.
    #[error("schema error: {0}")]
    Schema(String),

    /// A fixture, event or observation violates the data model.
    #[error("data integrity error: {0}")]
    DataIntegrity(String),

    /// An argument is outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A team, player or block key is unknown.
    #[error("lookup error: {0}")]
    Lookup(String),

    /// A computation produced a non-finite or otherwise unusable value.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Stored draws or observations are inconsistent with each other.
    #[error("consistency error: {0}")]
    Consistency(String),

    /// A draw-store file is malformed.
    #[error("store error: {0}")]
    Store(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by malformed input rather than by the
    /// numerics of a fit. The CLI maps input errors to exit code 2 and
    /// numeric/inference errors to exit code 3.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Schema(_) | Error::DataIntegrity(_) | Error::Lookup(_) | Error::Io(_)
        )
    }
}

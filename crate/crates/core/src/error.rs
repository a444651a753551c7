//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input data: a table, descriptor or surface that violates
    /// one of its structural invariants.
    #[error("validation: {0}")]
    Validation(String),

    /// An enumeration would exceed the configured work budget.
    /// No partial results are produced.
    #[error("budget exceeded: needed about {needed} steps, budget is {budget}")]
    Budget { needed: u64, budget: u64 },

    /// A floating-point result failed an exactness assertion, e.g. a
    /// dimension average that does not round to an integer.
    #[error("numerical consistency: {0}")]
    Numerical(String),

    /// A construction that is out of the supported range, e.g. irreducible
    /// representations of a group without a built-in table.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}

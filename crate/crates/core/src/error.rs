//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse group descriptor `{0}`")]
    Parse(String),
    #[error("shape mismatch: expected {expected} coordinates, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("invalid prime {p} for group {group}: {reason}")]
    InvalidPrime { p: u64, group: String, reason: String },
    #[error("invalid endomorphism: {0}")]
    InvalidMatrix(String),
    #[error("budget exceeded: {what} needs about {needed}, limit {limit}")]
    Budget { what: String, needed: u128, limit: u128 },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed structure-constants file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

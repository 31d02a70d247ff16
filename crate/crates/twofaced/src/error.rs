//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside its documented domain (lengths, probabilities).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A structurally valid configuration that cannot be executed, e.g. a
    /// keep/flip threshold that does not exist for the given channel noise.
    #[error("configuration error: {0}")]
    Config(String),

    /// Malformed textual input (bit or received-word text).
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A structural law failed, e.g. `d∘d ≠ 0` or a chain condition.
    #[error("invariant `{name}` violated at {location}")]
    Invariant { name: String, location: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("input error: {0}")]
    Input(String),
}

impl Error {
    pub fn invariant(name: impl Into<String>, location: impl Into<String>) -> Self {
        Error::Invariant { name: name.into(), location: location.into() }
    }

    pub fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

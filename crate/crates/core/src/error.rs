use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter violates a model invariant.
    #[error("invalid parameter `{name}`: {reason}")]
    Validation { name: String, reason: String },

    /// The requested quantity is undefined for the given inputs.
    #[error("domain error: {0}")]
    Domain(String),

    /// The adaptive quadrature did not reach its tolerance.
    #[error("quadrature did not converge: estimate {estimate:e}, error {error:e} after {intervals} intervals")]
    Quadrature {
        estimate: f64,
        error: f64,
        intervals: usize,
    },

    /// A computed probability left [0, 1] by more than round-off.
    #[error("numerical integrity violated in {context}: raw value {value:e}")]
    NumericalIntegrity { context: String, value: f64 },
}

impl Error {
    pub(crate) fn validation(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Validation {
            name: name.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

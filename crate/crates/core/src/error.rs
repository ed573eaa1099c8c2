use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The category description is structurally malformed.
    #[error("schema error in `{key}`: {message}")]
    Schema { key: String, message: String },

    #[error("unknown category `{name}`; available: {}", available.join(", "))]
    UnknownCategory {
        name: String,
        available: Vec<String>,
    },

    #[error("invalid category: {0}")]
    InvalidCategory(String),

    #[error("invalid tolerance: {0}")]
    Tolerance(String),

    #[error("cannot compose: {0}")]
    Composition(String),

    #[error("shape error: {0}")]
    Shape(String),

    /// A numerical step failed; `condition` carries the offending condition
    /// number or residual.
    #[error("numerical failure in {context} (diagnostic {condition:.3e})")]
    Numerical { context: String, condition: f64 },

    #[error("coupling morphism is not idempotent: residual {residual:.3e}, eigenvalue spread {spread:.3e}")]
    Idempotency { residual: f64, spread: f64 },

    #[error("construction failed: {0}")]
    Construction(String),
}

impl Error {
    pub(crate) fn schema(key: &str, message: impl Into<String>) -> Self {
        Error::Schema {
            key: key.into(),
            message: message.into(),
        }
    }
}

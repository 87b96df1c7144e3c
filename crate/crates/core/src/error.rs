use thiserror::Error;

use crate::model::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("eigenvalue iteration did not converge after {iterations} iterations (dimension {dim})")]
    NoConvergence { dim: usize, iterations: usize },

    #[error("{what} out of range: {value} not in {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    #[error("conjugate pairing failed: {0}")]
    PairingFailure(String),

    #[error("endomorphism is not symmetric under the Rosati involution")]
    NotSymmetric,

    #[error("endomorphism does not match the model: {0}")]
    Shape(String),

    #[error("model violates the type restrictions: {}", format_violations(.0))]
    InvalidModel(Vec<Violation>),

    #[error("intersection oracle failure: {0}")]
    Oracle(String),

    #[error("polarization compatibility failure: {0}")]
    Polarization(String),

    #[error("floating-point overflow: {0}")]
    Overflow(String),

    #[error("parse error: {0}")]
    Parse(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

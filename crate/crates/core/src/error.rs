use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("precision mismatch: {left} vs {right}")]
    PrecisionMismatch { left: usize, right: usize },

    #[error("insufficient precision: need at least q^{required}, got q^{available}")]
    InsufficientPrecision { required: usize, available: usize },

    /// The series is not in the span of the basis; `index` is the first
    /// coefficient that disagrees (or `None` if the leading system is
    /// already inconsistent).
    #[error("series is not in the space{}", match .index { Some(i) => format!(" (first mismatch at q^{i})"), None => String::new() })]
    NotInSpace { index: Option<usize> },

    #[error("evaluation point too close to a pole (|1 - a q^n| = {distance:e})")]
    PoleProximity { distance: f64 },

    #[error("finite-difference step too large: Richardson disagreement {disagreement:e} exceeds {limit:e}")]
    StepTooLarge { disagreement: f64, limit: f64 },

    #[error("invalid numeric configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

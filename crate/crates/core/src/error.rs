use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    /// Long division needed a coefficient quotient that does not exist in
    /// the coefficient ring (e.g. dividing by a non-unit leading coefficient
    /// in Q[a]).
    #[error("coefficient division not exact in the ring: {0}")]
    InexactCoefficient(String),

    /// The divisor does not divide the dividend; the remainder is attached.
    #[error("exact division failed: remainder of degree {remainder_degree}: {remainder}")]
    ExactDivision {
        remainder_degree: usize,
        remainder: String,
    },

    #[error("element is not invertible: {0}")]
    NotInvertible(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: u128, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

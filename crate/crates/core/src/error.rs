use thiserror::Error;

/// Errors surfaced by the certified operations.
///
/// Every variant corresponds to a contract violation or a data condition the
/// caller can act on; internal invariant breakage panics instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials do not divide exactly: {0}")]
    NotDivisible(String),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("polynomial is not monic: {0}")]
    NotMonic(String),

    #[error("polynomial violates the class sign shape: {0}")]
    SignViolation(String),

    #[error("matrix dimensions do not match: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("dimension {0} exceeds the oracle cap of {1}")]
    DimensionTooLarge(usize, usize),

    #[error("matrix is not primitive")]
    NotPrimitive,

    #[error("no sign change on [1, B]: {0}")]
    NoSignChange(String),

    #[error("root solver did not converge within the iteration cap")]
    NonConvergence,

    #[error("candidate vector length {got} does not match degree-1 = {expected}")]
    LengthMismatch { got: usize, expected: usize },

    #[error("class contains no admissible candidates")]
    EmptyClass,

    #[error("degree parity violation: {0}")]
    DegreeParity(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("root-location test undecided within the refinement cap: {0}")]
    Undecided(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

use crate::parse::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("gcd undefined: both inputs are zero")]
    GcdUndefined,
    #[error("{0}: zero polynomial not allowed")]
    ZeroInput(&'static str),
    #[error("{0}: constant polynomial not allowed")]
    ConstantInput(&'static str),
    #[error("cycle not effective: {0}")]
    CycleNotEffective(String),
    #[error("cycle is not pleasantly alternating: {0}")]
    NotPleasantlyAlternating(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("sequence not stabilized within window [{0}, {1}]")]
    NotStabilized(i64, i64),
    #[error("invalid ring descriptor: {0}")]
    InvalidRing(String),
    #[error("invalid graded ring data: {0}")]
    InvalidSpec(String),
    #[error("factors {first} and {second} lie on one orbit (shift {shift})")]
    OrbitViolation {
        first: String,
        second: String,
        shift: i64,
    },
    #[error("orbit incidence of {0} is only windowed; widen the certification or use a rational parameter")]
    Uncertified(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("constant term is zero: normalize first")]
    NormalizeFirst,
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;

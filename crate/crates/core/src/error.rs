use thiserror::Error;

/// Everything that can go wrong while building, solving or checking an instance.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed decimal literal {0:?}")]
    MalformedLiteral(String),
    #[error("decimal literal {literal:?} has more than {max} fractional digits")]
    TooManyFractionalDigits { literal: String, max: u32 },
    #[error("delta must be positive")]
    NonPositiveDelta,
    #[error("arithmetic overflow")]
    Overflow,
    #[error("initial positions are not sorted at index {0}")]
    Unsorted(usize),
    #[error("configuration has {got} positions, instance has {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("configuration is not independent: gap after index {0} is below delta")]
    NotIndependent(usize),
    #[error("instance has {n} points, exhaustive search supports at most {max}")]
    TooLarge { n: usize, max: usize },
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative power of zero")]
    ZeroBase,
    #[error("vertex configuration violates conservation: {0}")]
    ConservationViolated(String),
    #[error("pole hit: {0}")]
    PoleHit(String),
    #[error("single-bend side vanishes at boundary ({alpha},{beta}) while the crossed side does not")]
    DivisionByZeroRhs { alpha: u8, beta: u8 },
    #[error("bend weights do not satisfy the hypothesis: {0}")]
    RegimeMismatch(String),
    #[error("missing parameter: {0}")]
    MissingParam(String),
    #[error("no solution found: {0}")]
    NoSolutionFound(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

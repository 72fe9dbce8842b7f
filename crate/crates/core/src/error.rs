use thiserror::Error;

use crate::checker::ConditionVerdict;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("characteristic {0} is out of range (must be below 2^31)")]
    CharacteristicTooLarge(u64),
    #[error("a ring needs at least one variable")]
    NoVariables,
    #[error("{names} names but {weights} weights")]
    LengthMismatch { names: usize, weights: usize },
    #[error("duplicate variable name `{0}`")]
    DuplicateName(String),
    #[error("variable `{0}` must have a positive weight")]
    InvalidWeight(String),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("operands live in different free modules")]
    AmbientMismatch,
    #[error("element is not homogeneous")]
    NonHomogeneous,
    #[error("element is zero")]
    ZeroElement,
    #[error("zero module: every generator lies in the relations")]
    ZeroModule,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("generator `{0}` is not a monomial")]
    NonMonomial(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("internal inconsistency: the four conditions disagree ({0:?})")]
    Disagreement(ConditionVerdict),
}

pub type Result<T> = std::result::Result<T, Error>;

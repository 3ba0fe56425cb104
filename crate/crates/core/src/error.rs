use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the arithmetic substrate and the sum evaluators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("division by zero")]
    DivisionByZero,

    #[error("{a} and {b} are not relatively prime")]
    NotCoprime { a: BigInt, b: BigInt },

    #[error("modulus must be positive, got {0}")]
    NonPositiveModulus(BigInt),

    #[error("argument must be positive, got {0}")]
    NonPositiveArgument(BigInt),

    #[error("shift n must be non-negative, got {0}")]
    NegativeShift(BigInt),

    #[error("modular inverse needs a modulus of at least 2, got {0}")]
    InverseModulus(BigInt),

    #[error("n = {n} lies outside the reciprocity range [1, {max}]")]
    ShiftOutOfRange { n: BigInt, max: BigInt },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} is too large for the defining sum")]
    ModulusTooLarge(BigInt),

    #[error("invalid range [{min}, {max}]")]
    InvalidRange { min: u64, max: u64 },

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;

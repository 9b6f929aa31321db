use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus is not irreducible")]
    InvalidModulus,
    #[error("not a finite field")]
    NotAFiniteField,
    #[error("s = 1 gives a commutative ring")]
    SIsOne,
    #[error("the derivation is zero")]
    ZeroDerivation,
    #[error("no linearized annihilator with coefficients in F")]
    NoLinearizedAnnihilator,
    #[error("operation does not apply: {0}")]
    NotApplicable(String),
    #[error("operands belong to different contexts")]
    ContextMismatch,
    #[error("zero input")]
    ZeroInput,
    #[error("wrong context kind: {0}")]
    WrongKind(String),
    #[error("point {0} is ramified")]
    RamifiedPoint(String),
    #[error("two evaluation points share the same upsilon value")]
    RepeatedUpsilon,
    #[error("not divisible")]
    NonDivisible,
    #[error("denominator does not split over F")]
    NonSplitDenominator,
    #[error("z = 0 is not allowed in the Frobenius kind")]
    ZeroPointFrobenius,
    #[error("truncation order too small")]
    TruncationTooSmall,
    #[error("zero function has no order")]
    ZeroFunction,
    #[error("degree too large: {0}")]
    DegreeTooLarge(String),
    #[error("dimension k out of range: {0}")]
    KOutOfRange(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

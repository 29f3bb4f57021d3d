use thiserror::Error;

/// Errors raised by the exact and p-adic routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("pole at evaluation point {0}")]
    Pole(String),
    #[error("multinomial indices {k}+{l}+{m} do not sum to {n}")]
    MultinomialMismatch { n: u32, k: u32, l: u32, m: u32 },
    #[error("argument base q^{got} does not match required base q^{expected}")]
    BaseMismatch { expected: u32, got: u32 },
    #[error("expansion path requires integer argument, got {e}/{d}")]
    NonIntegerArgument { e: u64, d: u32 },
    #[error("q-falling denominator may vanish: h = {0} must be at least 1")]
    NonPositiveTwist(i64),
    #[error("degenerate q-falling factorial: h = {h} < k = {k}")]
    DegenerateFalling { h: i64, k: u32 },
    #[error("identity requires positive n")]
    NonPositiveOrder,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("p-adic prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("p-adic division precision exhausted")]
    PrecisionExhausted,
    #[error("log domain: argument is not congruent to 1 modulo p")]
    LogDomain,
    #[error("exp domain: argument must have valuation at least 1")]
    ExpDomain,
    #[error("precision underflow: working precision {have} too small, need at least {need}")]
    PrecisionUnderflow { have: u32, need: u32 },
    #[error("modulus {p}^{k} does not fit in 63 bits")]
    ModulusTooLarge { p: u64, k: i64 },
}

pub type Result<T> = std::result::Result<T, Error>;

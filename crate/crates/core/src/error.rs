use thiserror::Error;

/// Errors raised by series arithmetic and the constructions built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivideByZero,

    #[error("not divisible: {0}")]
    NotDivisible(String),

    #[error("series division not exact at q^({q24}/24): {reason}")]
    NotDivisibleAt { q24: i64, reason: String },

    #[error("insufficient precision: need q-exponent {needed24}/24 but series is known below {available24}/24")]
    InsufficientPrecision { needed24: i64, available24: i64 },

    #[error("coefficient has unbounded zeta-support: {0}")]
    InfiniteZetaSupport(String),

    #[error("operation requires integral q- and zeta-exponents")]
    HalfIntegralInput,

    #[error("result has a non-integral coefficient at q^{n} zeta^{r}")]
    NonIntegralCoefficient { n: i64, r: i64 },

    #[error("the Eisenstein term of the lift is required (delta(k) c(0,0) != 0)")]
    EisensteinTermRequired,

    #[error("index mismatch: expected 2m = {expected}, found {found}")]
    IndexMismatch { expected: i64, found: i64 },

    #[error("trivial point (all entries zero)")]
    TrivialPoint,

    #[error("invalid inflation point: {0}")]
    InvalidPoint(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable name of the variant, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivideByZero => "DivideByZero",
            Error::NotDivisible(_) => "NotDivisible",
            Error::NotDivisibleAt { .. } => "NotDivisible",
            Error::InsufficientPrecision { .. } => "InsufficientPrecision",
            Error::InfiniteZetaSupport(_) => "InfiniteZetaSupport",
            Error::HalfIntegralInput => "HalfIntegralInput",
            Error::NonIntegralCoefficient { .. } => "NonIntegralCoefficient",
            Error::EisensteinTermRequired => "EisensteinTermRequired",
            Error::IndexMismatch { .. } => "IndexMismatch",
            Error::TrivialPoint => "TrivialPoint",
            Error::InvalidPoint(_) => "InvalidPoint",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division is not exact: nonzero remainder")]
    NonExactDivision,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("shift t must be positive when the padded partition has a zero part")]
    ShiftRequired,

    #[error("matrix is singular")]
    Singular,

    #[error("matrix has wrong shape: {0}")]
    Shape(String),

    #[error("{value} is not a power of {prime}")]
    NotPrimePower { value: String, prime: u64 },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("chain is not nested: {0}")]
    ChainViolation(String),

    #[error("index sequence must be strictly increasing")]
    NotIncreasing,

    #[error("all parts are zero: the modulus p^0 is degenerate")]
    DegenerateModulus,

    #[error("exhaustive search of size {size} exceeds the configured bound {bound}")]
    SizeGuard { size: String, bound: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}

use thiserror::Error;

/// Every failure the library reports. Variants carry enough context to name
/// the offending input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size {p}^{f} exceeds the supported bound 2^31")]
    FieldTooLarge { p: u64, f: u32 },
    #[error("modulus {0:?} is not a monic irreducible polynomial of the stated degree")]
    BadModulus(Vec<u64>),
    #[error("fields do not match: {0}")]
    FieldMismatch(String),
    #[error("GF({p}^{sub}) is not a subfield of GF({p}^{f})")]
    NotSubfield { p: u64, sub: u32, f: u32 },
    #[error("discrete logarithm of zero")]
    DlogZero,
    #[error("no discrete-log table for fields larger than 2^24 (size {0})")]
    NoDlogTable(u64),
    #[error("{0} is not a power of the characteristic")]
    NotPPower(u64),
    #[error("root-of-unity orders {0} and {1} are incompatible (neither divides the other)")]
    IncompatibleOrders(u64, u64),
    #[error("{c} is not a unit modulo {m}")]
    NotUnit { c: i64, m: u64 },
    #[error("not a rational integer: nonzero coefficients {0:?}")]
    NotRational(Vec<(usize, String)>),
    #[error("exponent {0} is divisible by the characteristic")]
    ExponentDivisibleByP(u64),
    #[error("expected {expected} parameters, got {got}")]
    ParamCount { expected: usize, got: usize },
    #[error("parameter exponents must be strictly decreasing")]
    ParamOrder,
    #[error("gcd({0}, {1}) != 1")]
    NotCoprime(u64, u64),
    #[error("parameter must be nonzero")]
    ZeroParameter,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("constant term present")]
    ConstantTerm,
    #[error("group closure exceeded cap {0}")]
    CapExceeded(usize),
    #[error("singular matrix")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("form check failed: {0}")]
    FormCheck(String),
    #[error("catalog: {0}")]
    Catalog(String),
    #[error("unknown suite {0}")]
    UnknownSuite(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

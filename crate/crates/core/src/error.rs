use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeP(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus is reducible over F_{p}")]
    ReducibleModulus { p: u32 },
    #[error("modulus must be monic of degree {expected}, got {got:?}")]
    DegreeMismatch { expected: u32, got: Vec<u32> },
    #[error("field of order {0} exceeds the supported table size")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("bad precision: val {val} must be below prec {prec} with {len} coefficients")]
    BadPrecision { val: i64, prec: i64, len: usize },
    #[error("operation undefined on a series that is zero to its precision")]
    ZeroInput,
    #[error("digit precision {digits} of the {p}-adic argument does not determine index {j}")]
    InsufficientDigitPrecision { p: u32, digits: usize, j: u64 },
    #[error("prime mismatch: field characteristic {field}, p-adic prime {padic}")]
    PrimeMismatch { field: u32, padic: u32 },
    #[error("series is not a 1-unit (val 0, constant term 1)")]
    NotOneUnit,
    #[error("argument is not a monic polynomial in T")]
    NotMonic,
    #[error("argument has v_inf = {}, but |a|_inf > 1 requires a negative valuation", .val.map_or("inf".to_string(), |v| v.to_string()))]
    NotInA { val: Option<i64> },
    #[error("enumeration of {count} elements (l = {l}) exceeds the configured cap")]
    EnumerationTooLarge { l: u32, count: u128 },
    #[error("truncation bound does not reach precision {prec} within l <= {l_cap}")]
    NoConvergence { prec: i64, l_cap: u32 },
    #[error("index {i} is not a positive multiple of q - 1 = {q_minus_one}")]
    BadIndex { i: u64, q_minus_one: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

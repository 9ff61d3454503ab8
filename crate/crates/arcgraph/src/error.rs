use thiserror::Error;

/// Everything that can go wrong short of a verdict. Ops that can answer a
/// question always answer it (possibly with `Unknown`); errors are reserved
/// for inputs outside an op's domain and for blown resource caps.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what} must be a positive integer")]
    ZeroNotPositive { what: &'static str },

    #[error("base must be at least 2, got {base}")]
    BaseTooSmall { base: u64 },

    #[error("exponent must be at least 1")]
    ExponentTooSmall,

    #[error("{what} = {value} exceeds the input cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: String,
        cap: u64,
    },

    #[error("resource budget exceeded: {detail}")]
    BudgetExceeded { detail: String },

    #[error("gcd({a}, {b}) = {gcd}; the arguments must be coprime")]
    NotCoprime { a: String, b: String, gcd: String },

    #[error("pair construction does not apply: {reason}")]
    PairNotApplicable { reason: String },

    #[error("{u} has no representation {a}*x + {l}*y with x, y >= 0")]
    NotRepresentable { a: String, l: String, u: String },

    #[error("residue {r} is not reduced modulo {n}")]
    ResidueOutOfRange { r: String, n: String },

    #[error("no Frobenius number: {reason}")]
    NoFrobeniusNumber { reason: String },

    #[error("no exact classification implemented for {function}")]
    Unclassifiable { function: String },

    #[error("polygon length must be at least 3, got {length}")]
    PolygonTooShort { length: u64 },

    #[error("invalid factorization: {reason}")]
    InvalidFactorization { reason: String },

    #[error("invalid digit expansion: {reason}")]
    InvalidDigits { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

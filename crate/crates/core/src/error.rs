use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("cannot parse `{0}` as a rational (expected `p`, `p/q` or a decimal)")]
    BadRational(String),

    #[error("dimension mismatch in {context}: {left} vs {right}")]
    DimensionMismatch { context: &'static str, left: usize, right: usize },

    #[error("infinity norm of an empty vector")]
    EmptyVector,

    #[error("format error at line {line}: {msg}")]
    Format { line: usize, msg: String },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{what} is {size}, above the exhaustive limit of {limit}")]
    Capacity { what: &'static str, size: usize, limit: usize },

    #[error("assignment covers {got} variables, formula needs {expected}")]
    PartialAssignment { expected: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no existential assignment for universal assignment {0}; the instance is a NO instance")]
    NoExistentialWitness(String),

    #[error("identity violated: {0}")]
    Identity(String),
}

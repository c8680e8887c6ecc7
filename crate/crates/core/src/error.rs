use thiserror::Error;

/// Errors raised by the library.
///
/// Budget exhaustion during a distance computation is *not* an error: those
/// routines return a partial, still certified, interval instead.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid field parameters: {0}")]
    InvalidField(String),

    #[error("modulus {0:?} is reducible over GF({1})")]
    ReducibleModulus(Vec<u32>, u32),

    #[error("operands belong to different fields ({left} vs {right})")]
    FieldMismatch { left: String, right: String },

    #[error("element is not contained in the subfield GF({0})")]
    NotInSubfield(u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("budget exceeded: {what} needs {needed} operations, budget is {budget}")]
    BudgetExceeded {
        what: String,
        needed: u128,
        budget: u128,
    },

    #[error("the point set is empty")]
    EmptyPointSet,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn budget(what: impl Into<String>, needed: u128, budget: u128) -> Self {
        Error::BudgetExceeded {
            what: what.into(),
            needed,
            budget,
        }
    }
}

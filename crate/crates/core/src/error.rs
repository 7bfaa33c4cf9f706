use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by group construction, polynomial arithmetic and the
/// spectral routines.
///
/// The variants fall into three families that the command line maps onto
/// distinct exit codes: bad input, internal inconsistency (two routes that
/// must agree did not), and verification failure.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group specification: {0}")]
    InvalidGroup(String),

    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("division is not exact")]
    InexactDivision,

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("missing value for class variable `{0}`")]
    MissingClassValue(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Inconsistency(_) | Error::Verification(_))
    }
}

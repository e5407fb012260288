use thiserror::Error;

/// Errors raised by the library and surfaced by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero scalar where a nonzero value is required")]
    ZeroScalar,
    #[error("{0} is not a valid prime for this field")]
    InvalidPrime(u64),
    #[error("scalar {0} is not defined over {1}")]
    NotInField(String, String),
    #[error("gram matrix is degenerate")]
    DegenerateForm,
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("{0} is not a member extension of {1}")]
    UnknownExtension(String, String),
    #[error("negative quadric dimension {0}")]
    NegativeDimension(i64),
    #[error("malformed Tate line {0}")]
    MalformedLine(String),
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("form has non-integral entries after clearing denominators")]
    NonIntegralInput,
    #[error("invalid extension family: {0}")]
    InvalidFamily(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

/// Errors raised by the kernel.
///
/// Every fallible operation in the crate returns this type; the CLI maps
/// variants onto exit codes (see [`Error::exit_code`]).
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("field mismatch: {0}")]
    SpecMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field specification: {0}")]
    InvalidField(String),
    #[error("degree {degree} exceeds the factorization cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("not supported: {0}")]
    NotSupported(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("subspace is not a subcoalgebra (witness basis vector {witness:?})")]
    NotASubcoalgebra { witness: Vec<String> },
    #[error("subspace is not a coideal (witness basis vector {witness:?})")]
    NotACoideal { witness: Vec<String> },
    #[error("residue field is not separable")]
    NonSeparableResidue,
    #[error("invalid G-set action: {0}")]
    InvalidAction(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("categories differ")]
    CategoryMismatch,
    #[error("the two morphisms are equal")]
    MapsEqual,
    #[error("check failed: {check}: {detail}")]
    ReportedFailure { check: String, detail: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::SpecMismatch(_)
            | Error::InvalidField(_)
            | Error::ShapeMismatch(_)
            | Error::AmbientMismatch { .. }
            | Error::NotASubcoalgebra { .. }
            | Error::NotACoideal { .. }
            | Error::InvalidAction(_)
            | Error::NotASubgroup(_)
            | Error::CategoryMismatch
            | Error::MapsEqual
            | Error::ReportedFailure { .. }
            | Error::Invalid(_) => 3,
            Error::DivisionByZero
            | Error::DegreeCapExceeded { .. }
            | Error::NotSupported(_)
            | Error::NonSeparableResidue
            | Error::Internal(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

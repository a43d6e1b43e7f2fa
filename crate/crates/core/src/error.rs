use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational {input:?}: {reason}")]
pub struct ParseScalarError {
    pub input: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("expected {expected} vectors, got {found}")]
    Arity { expected: usize, found: usize },

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("index tuple {0:?} is not strictly increasing")]
    UnorderedIndices(Vec<usize>),

    #[error("dimension {0} exceeds the supported maximum of 32")]
    DimensionTooLarge(usize),

    #[error("interior product of a 0-form")]
    InteriorOfScalar,

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("metric is not positive definite (leading minor {minor} is {value})")]
    NotPositiveDefinite { minor: usize, value: String },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("endomorphism does not square to minus the identity")]
    NotAlmostComplex,

    #[error("not a contact pair: {0}")]
    NotContactPair(String),

    #[error("not a generalized contact pair: {0}")]
    NotGeneralizedPair(String),

    #[error("two-form is degenerate: rank {rank} < {dim}")]
    Degenerate { rank: usize, dim: usize },

    #[error("no one-form theta solves d(omega) = omega ^ theta")]
    NotLcs,

    #[error("the Lee form is not unique (wedge with omega has a kernel of dimension {0})")]
    LeeFormNotUnique(usize),

    #[error("the Lee form is not closed")]
    LeeFormNotClosed,

    #[error("linear system for {0} is inconsistent or rank deficient")]
    Unsolvable(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("endomorphism does not preserve the splitting: {0}")]
    SplittingNotPreserved(String),

    #[error("incompatible data: {0}")]
    Incompatible(String),

    #[error("unknown model {0:?}")]
    UnknownModel(String),

    #[error("unknown {kind} {name:?}")]
    UnknownName { kind: &'static str, name: String },

    #[error("{path}: {message}")]
    Document { path: String, message: String },
}

impl Error {
    /// Errors caused by malformed or mismatched input, as opposed to a
    /// structure that fails to have the property being checked.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch { .. }
                | Error::DegreeMismatch { .. }
                | Error::Arity { .. }
                | Error::IndexOutOfRange { .. }
                | Error::UnorderedIndices(_)
                | Error::DimensionTooLarge(_)
                | Error::InteriorOfScalar
                | Error::InvalidModel(_)
                | Error::UnknownModel(_)
                | Error::UnknownName { .. }
                | Error::Document { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

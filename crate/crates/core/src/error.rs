use thiserror::Error;

/// Errors raised by map construction, moves and desk-scale guards.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("alpha is not a fixed-point-free involution")]
    NotInvolution,
    #[error("permutation group does not act transitively on darts")]
    Disconnected,
    #[error("Euler characteristic is {0}, map is not planar")]
    NonPlanar(i64),
    #[error("root dart {0} out of range")]
    BadRoot(usize),
    #[error("the root corner cannot be rotated")]
    RootCorner,
    #[error("dart {0} is not a corner of this map")]
    InvalidCorner(usize),
    #[error("flipping the root edge is not allowed for this chain")]
    RootEdgeForbidden,
    #[error("requested size {requested} exceeds configured limit {limit}")]
    LimitExceeded { requested: usize, limit: usize },
    #[error("index {0} out of range")]
    OutOfRange(usize),
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("validation error: {0}")]
    ValidationError(String),
    #[error("split sequences are not anchored at the common reference quadrangulation")]
    SequenceMismatch,
    #[error("eigensolver did not converge within the iteration budget")]
    ConvergenceFailure,
}

pub type Result<T> = std::result::Result<T, MapError>;

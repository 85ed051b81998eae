use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse scalar {0:?}")]
    ScalarParse(String),

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid arity {0}: brackets need at least two arguments")]
    InvalidArity(usize),

    #[error("bracket of {args} is forced to zero by graded skew-symmetry but was given a nonzero value")]
    ForcedZero { args: String },

    #[error("bracket of {args} has a component of the wrong parity at {target}")]
    Ungraded { args: String, target: String },

    #[error("bracket of {args} is given more than once")]
    DuplicateKey { args: String },

    #[error("malformed algebra file: {0}")]
    Format(String),

    #[error("functional is not a supertrace: {0}")]
    NotSupertrace(String),

    #[error("supertrace space has dimension {0}; choose a basis element with --index")]
    AmbiguousSupertrace(usize),

    #[error("subspace is not an ideal")]
    NotIdeal,

    #[error("singular change-of-basis block ({0})")]
    SingularBlock(&'static str),

    #[error("odd Clifford dimension {0} has no spinor supertrace")]
    OddCliffordDimension(u32),

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("search space of {count} assignments exceeds the budget of {budget}")]
    BudgetExceeded { count: String, budget: u64 },

    #[error("assignment is missing variable {0}")]
    MissingVariable(String),

    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
}

use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no value supplied for variable `{0}`")]
    MissingVariable(String),
    #[error("variable lists differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("constant term of the series to invert is not a unit")]
    NonUnitConstantTerm,
    #[error("truncation caps differ: {0:?} vs {1:?}")]
    CapMismatch(Vec<u32>, Vec<u32>),
    #[error("required exponent {needed} of variable {var} exceeds cap {cap}")]
    CapExceeded { var: usize, needed: i64, cap: u32 },
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("invalid bottom row: {0}")]
    InvalidBottomRow(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search exceeded the node budget of {budget}")]
    ResourceBound { budget: u64 },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("array is not vertically symmetric")]
    NotSymmetric,
    #[error("pattern is not in the image of the correspondence: {0}")]
    NotInImage(String),
    #[error("identity violated: {0}")]
    Mismatch(String),
    #[error("result is not an integer: {0}")]
    NonInteger(String),
    #[error("invalid parity combination n={n}, l={l}")]
    InvalidParity { n: usize, l: usize },
    #[error("{what} needs {m} symbolic variables, above the cap of {cap}")]
    SizeCap { what: String, m: usize, cap: usize },
    #[error("division by zero while evaluating at a sample point")]
    Pole,
}

pub type Result<T> = std::result::Result<T, Error>;

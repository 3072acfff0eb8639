use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed rational literal {0:?}")]
    Parse(String),

    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("naive enumeration needs {count} monomials, cap is {cap}")]
    EnumerationTooLarge { count: u128, cap: u128 },

    /// Positions are zero-based.
    #[error("nodes must be pairwise distinct, but x[{first}] = x[{second}] = {value}")]
    DuplicateNode {
        first: usize,
        second: usize,
        value: String,
    },

    #[error("{op} expects {expected} nodes, got {got}")]
    Arity {
        op: &'static str,
        expected: &'static str,
        got: usize,
    },

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed matrix: {0}")]
    Matrix(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Domain errors are violated mathematical preconditions, as opposed to
    /// malformed input text.
    pub fn is_domain(&self) -> bool {
        !matches!(
            self,
            Error::Parse(_) | Error::ZeroDenominator(_) | Error::Matrix(_)
        )
    }
}

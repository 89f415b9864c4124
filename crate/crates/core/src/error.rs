use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: expected one of {expected:?}")]
    Syntax { offset: usize, expected: Vec<String> },

    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { offset: usize, name: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("zero polynomial is not allowed here: {0}")]
    ZeroPolynomial(&'static str),

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("polynomial is not homogeneous of degree {expected}")]
    NotHomogeneous { expected: u32 },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

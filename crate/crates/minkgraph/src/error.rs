use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown function `{name}` at byte {offset}")]
    UnknownFunction { name: String, offset: usize },

    #[error("exponent must be an integer at byte {offset}")]
    NonIntegerExponent { offset: usize },

    #[error("division by zero in `{node}` at bytes {span:?}")]
    DivisionByZero { node: String, span: (usize, usize) },

    #[error("evaluation error: {0}")]
    Evaluation(String),

    #[error("quadrature failed to converge (requested tol {tol})")]
    Quadrature { tol: f64 },

    #[error("not spacelike at ({0}, {1})")]
    NotSpacelike(f64, f64),

    #[error("codimension must be 2 for this operation, got {0}")]
    Codimension(usize),

    #[error("degenerate data: {0}")]
    Degenerate(String),

    #[error("invalid data: {0}")]
    InvalidData(String),

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

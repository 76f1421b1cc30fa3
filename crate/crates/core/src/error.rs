use thiserror::Error;

/// Errors raised by the core containers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("periods must be positive (got n={n}, m={m})")]
    ZeroPeriod { n: usize, m: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("malformed graph: {0}")]
    Structure(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid graph: {0}")]
    Invalid(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("vertex {0} is frozen")]
    FrozenVertex(usize),
    #[error("grading is unbalanced at vertex {0}")]
    Unbalanced(usize),
    #[error("matrix is rank deficient")]
    RankDeficient,
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

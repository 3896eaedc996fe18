use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("arity mismatch: expected {expected} components, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("mask {mask:#b} out of range for ground set of size {n}")]
    MaskRange { mask: u32, n: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, NbrwError>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NbrwError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} has degree {degree}, minimum degree 2 required")]
    Degree { vertex: String, degree: usize },

    #[error("graph is disconnected: {0}")]
    Disconnected(String),

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("graph is not regular: {0}")]
    NotRegular(String),

    #[error("power iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("integer overflow in bounded counting mode at step {step}")]
    Overflow { step: usize },

    #[error("budget of {budget} exceeded while {what}")]
    BudgetExceeded { budget: usize, what: String },

    #[error("no nonzero coefficient with n >= 1")]
    AllZero,

    #[error("dense small cycles could not be verified: {0}")]
    DenseCyclesUnverified(String),

    #[error("operation requires an infinite graph source, got a finite graph")]
    FiniteGraph,

    #[error("operation requires a finite graph, got an infinite source")]
    InfiniteGraph,
}

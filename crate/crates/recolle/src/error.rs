use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("not finite-dimensional at the declared nilpotency bound: {0}")]
    NonFiniteDimensional(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

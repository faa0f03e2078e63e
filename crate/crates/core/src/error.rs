use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::document::DocumentError;
use crate::order::OrderError;
use crate::topology::TopologyError;

/// Crate-wide error, wrapping the per-module error types.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Document(Box<DocumentError>),
    #[error("category mismatch: {0}")]
    CategoryMismatch(String),
    #[error("budget exceeded: {what} needs {size} elements, budget is {budget}")]
    BudgetExceeded { what: String, size: u128, budget: usize },
}

impl From<DocumentError> for Error {
    fn from(e: DocumentError) -> Self {
        Error::Document(Box::new(e))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

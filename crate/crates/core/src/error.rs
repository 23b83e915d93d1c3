use thiserror::Error;

/// Errors raised by the ordering structures and maintainers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("item {0} is not in the list")]
    MissingItem(usize),
    #[error("item {0} is already in the list")]
    DuplicateItem(usize),
    #[error("list of {0} items exceeds the supported label width")]
    TooLarge(usize),
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("selection from an empty candidate set")]
    EmptySelection,
    #[error("epsilon must lie in (0, 1/2], got {0}")]
    InvalidEpsilon(f64),
    #[error("maintainer is frozen after reporting a cycle")]
    Frozen,
    #[error("vertex {0} is not a component representative")]
    NotRepresentative(usize),
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

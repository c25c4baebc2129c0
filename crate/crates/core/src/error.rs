use thiserror::Error;

use crate::ElementId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relation contains a cycle through elements {0} and {1}")]
    CycleDetected(ElementId, ElementId),

    #[error("element index {index} out of range for a poset of {size} elements")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),

    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown element label `{0}`")]
    UnknownLabel(String),

    #[error("composition of the empty subset is undefined")]
    EmptySubset,

    #[error("{what}: size {size} exceeds the configured limit {limit}")]
    ResourceLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

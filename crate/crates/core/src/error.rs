use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

pub type Result<T, E = RspError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RspError {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("edge {edge}: {what} must be finite and nonnegative, got {value}")]
    InvalidWeight {
        edge: EdgeId,
        what: &'static str,
        value: f64,
    },
    #[error("source and target must differ (both are {0})")]
    SourceEqualsTarget(VertexId),
    #[error("resource bound must be finite and nonnegative, got {0}")]
    InvalidBound(f64),
    #[error("path is not chained at position {position}")]
    BrokenPath { position: usize },
    #[error("scaling factor must be finite and positive, got {0}")]
    InvalidScale(f64),
    #[error("epsilon must be finite and positive, got {0}")]
    InvalidEpsilon(f64),
    #[error("edge {edge} has non-integer cost {cost}")]
    NonIntegerCost { edge: EdgeId, cost: f64 },
    #[error("budget {budget} outside the admissible range 1..={n}")]
    BudgetOutOfRange { budget: u64, n: usize },
    #[error("seed array has length {got}, expected {expected}")]
    SeedLength { got: usize, expected: usize },
    #[error("seed for vertex {vertex} is negative or NaN ({value})")]
    InvalidSeed { vertex: VertexId, value: f64 },
    #[error("no table entry for vertex {vertex} at budget {row}")]
    UnreachableEntry { vertex: VertexId, row: usize },
    #[error("instance has {n} vertices, exhaustive search is limited to {max}")]
    InstanceTooLarge { n: usize, max: usize },
    #[error("label limit of {0} exceeded")]
    LabelLimitExceeded(usize),
    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),
    #[error("internal contract violated: {0}")]
    Contract(String),
}

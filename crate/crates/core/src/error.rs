use alloc::string::String;

use crate::graph::GraphClass;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("vertex {vertex} out of range 1..={n}")]
    BadVertex { vertex: usize, n: usize },
    #[error("unsupported graph class {found} for {operation}")]
    Class {
        operation: &'static str,
        found: GraphClass,
    },
    #[error("predicate is false at the upper bound {hi}")]
    NoThreshold { hi: usize },
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("internal consistency fault: {0}")]
    Consistency(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

use thiserror::Error;

use crate::treedecomp::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("operation requires a nonempty vertex set")]
    EmptySet,

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("graph has {n} vertices, above the brute-force limit of {limit}")]
    OracleScale { n: usize, limit: usize },

    #[error("parameter {name} = {value} exceeds cap {cap}")]
    ParameterTooLarge {
        name: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(Violation),

    #[error("dynamic program exceeded the state limit of {limit} entries")]
    StateLimit { limit: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("no applicable algorithm: {0}")]
    NoRoute(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

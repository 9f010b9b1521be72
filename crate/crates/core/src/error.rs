//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("terminals must differ (s = t = {0})")]
    EqualTerminals(usize),
    #[error("dimension mismatch: cut over {cut_n} vertices, graph over {graph_n}")]
    DimensionMismatch { cut_n: usize, graph_n: usize },
    #[error("arc weight must be positive")]
    NonPositiveWeight,
    #[error("vertex sets disagree: {0} vs {1}")]
    VertexCountMismatch(usize, usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("s and t fall in the same block")]
    TerminalsInOneBlock,
    #[error("query sets must be disjoint")]
    OverlappingSets,
    #[error("query sets must be non-empty")]
    EmptyQuerySet,
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("flow is not a subgraph of the given graph")]
    FlowNotSubgraph,
    #[error("edge multiset is not a feasible s-t flow")]
    InfeasibleFlow,
    #[error("graph on {n} vertices exceeds the witness enumeration cap {cap}")]
    WitnessCapExceeded { n: usize, cap: usize },
    #[error("potential vector undefined: no witnesses remain")]
    ZeroWitnesses,
    #[error("flow promise violated: no admissible edge found while the target is unmet")]
    PromiseViolation,
    #[error("retry cap exceeded in {0}")]
    RetryCapExceeded(&'static str),
    #[error("sparsifier produced an unusable approximation")]
    SparsifierUnusable,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use mci_ilp::ModelError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MciError {
    #[error("a hypergraph needs at least one vertex")]
    EmptyVertexSet,
    #[error("hyperedge {hyperedge}: vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { hyperedge: usize, vertex: usize, n: usize },
    #[error("hyperedge {hyperedge}: vertex {vertex} listed twice")]
    RepeatedVertex { hyperedge: usize, vertex: usize },
    #[error("need at least two components, got {0}")]
    TooFewComponents(usize),
    #[error("unknown routine {0} (expected 1, 2 or 3)")]
    UnknownRoutine(u8),
    #[error("unknown strategy {0} (expected 1..=6)")]
    UnknownStrategy(u8),
    #[error("full bipartition model needs {needed} cuts, above the limit of {limit}")]
    TooManyCuts { needed: u128, limit: u128 },
    #[error("root {root} is not in the hyperedge")]
    RootNotInHyperedge { root: usize },
    #[error("relaxed model became infeasible although the support graph is feasible")]
    UnexpectedInfeasibility,
    #[error("hyperedge type {0} has no size bounds")]
    NoSizeBounds(u8),
    #[error("unknown hyperedge type {0} (expected 1..=5)")]
    UnknownHyperedgeType(u8),
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("type-5 scenario asks for {wanted} distinct hyperedges but only {available} exist")]
    NotEnoughDistinctHyperedges { wanted: usize, available: u128 },
    #[error("instance index {index} outside 0..{count}")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

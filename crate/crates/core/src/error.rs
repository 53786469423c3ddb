use thiserror::Error;

use crate::digraph::EdgeId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("edge {0} does not exist")]
    UnknownEdge(EdgeId),
    #[error("vertex index {index} out of range for {vertex_count} vertices")]
    VertexOutOfRange { index: usize, vertex_count: usize },
    #[error("edge {0} is a loop")]
    LoopEdge(EdgeId),
    #[error("digraph is not weakly connected ({components} components)")]
    Disconnected { components: usize },
    #[error("edge {0} is not in the spanning tree")]
    NotInTree(EdgeId),
    #[error("edge {0} is already in the spanning tree")]
    InTree(EdgeId),
    #[error("edge set is not a spanning tree: {0}")]
    NotSpanningTree(String),
    #[error("edge ordering is not a bijection on the edges: {0}")]
    InvalidOrdering(String),
    #[error("edge {edge} has position {position} in the ordering, expected 1")]
    NotFirstInOrdering { edge: EdgeId, position: usize },
    #[error("edge set {0:?} is not a cycle")]
    NotACycle(Vec<EdgeId>),
    #[error("weights are not generic: cycle {0:?} has two arcs of equal weight")]
    NonGeneric(Vec<EdgeId>),
    #[error("signature is not long-arc positive: cycle {cycle:?} has positive arc {positive:?}")]
    NotLongArcPositive {
        cycle: Vec<EdgeId>,
        positive: Vec<EdgeId>,
    },
    #[error("weight scale 2^{0} exceeds the supported integer width")]
    WeightOverflow(usize),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("polytope is a single point")]
    Degenerate,
    #[error("structural error: {0}")]
    Structural(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: loop edge on vertex `{label}` (graphs must be simple)")]
    LoopEdge { line: usize, label: String },

    #[error("line {line}: duplicate edge {{{a}, {b}}}")]
    DuplicateEdge { line: usize, a: String, b: String },

    #[error("line {line}: expected one or two vertex labels, found {found}")]
    MalformedLine { line: usize, found: usize },

    #[error("vertex index {index} out of range for a graph on {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("exponential enumeration refused: {n} vertices exceeds the gate of {max_n}")]
    EnumerationGate { n: usize, max_n: usize },

    #[error("{operation} requires bipartite input")]
    NotBipartite { operation: &'static str },

    #[error("{operation} requires connected bipartite input")]
    NotConnectedBipartite { operation: &'static str },

    #[error("{operation} requires a graph with at least one edge")]
    NoEdges { operation: &'static str },

    #[error("vertex set is not independent")]
    NotIndependent,

    #[error("vertex set must be a nonempty proper subset of one bipartition side")]
    NotProperSideSubset,

    #[error("independent set does not define a facet")]
    NotFacetDefining,

    #[error("hyperplane does not support the cone: edge vectors lie strictly on both sides")]
    NotSupporting,

    #[error("representation must be a full representation")]
    NotFullRepresentation,

    #[error("cannot parse `{text}` as an exact rational")]
    InvalidRational { text: String },

    #[error("coordinate {index} is not an integer")]
    NonInteger { index: usize },

    #[error("integer overflow in exact computation")]
    Overflow,

    #[error("oracle gate exceeded: {what} is {value}, limit {limit}")]
    OracleGate {
        what: &'static str,
        value: usize,
        limit: usize,
    },
}

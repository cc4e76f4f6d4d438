use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NotCubic { vertex: usize, degree: usize },
    #[error("a cubic graph needs an even number of vertices, got {0}")]
    OddOrderCubic(usize),
    #[error("graph is not 2-connected")]
    NotBiconnected,
    #[error("triangle {0:?} is not a net")]
    NotANet([usize; 3]),
    #[error("malformed graph6: {0}")]
    MalformedGraph6(String),
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("cubic graphs need an even order, got {0}")]
    OddOrder(usize),
    #[error("order {0} is too small")]
    TooSmall(usize),
    #[error("ring needs k >= 2, got {0}")]
    KTooSmall(usize),
    #[error("no simple 2-connected pairing after {0} attempts")]
    RetryExhausted(usize),
    #[error("enumeration is limited to n <= {max}, got {n}")]
    TooLarge { n: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices, exact cap is {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("search budget exhausted")]
    Timeout,
    #[error("gadget map does not match graph: {0}")]
    MapMismatch(String),
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("coloring has {found} entries but the graph has {expected} vertices")]
    SizeMismatch { expected: usize, found: usize },

    #[error("color {color} at vertex {vertex} is not allowed")]
    InvalidColor { vertex: usize, color: usize },

    #[error("invalid graph request: {0}")]
    InvalidGraph(String),

    #[error("invalid flip parameters: {0}")]
    InvalidParams(String),

    #[error("invalid list assignment: {0}")]
    InvalidLists(String),

    #[error("state space has at least {states} states, above the cap of {cap}")]
    StateSpaceTooLarge { states: u128, cap: usize },

    #[error("gamma = {0} must lie strictly between 0 and 1/2")]
    GammaOutOfRange(String),

    #[error("colorings must differ at exactly one vertex (they differ at {0})")]
    NotAdjacent(usize),

    #[error("component is stale: vertex {0} no longer carries either component color")]
    StaleComponent(usize),

    #[error("coupling marginal mismatch: {0}")]
    MarginalMismatch(String),

    #[error("linear program: {0}")]
    Lp(String),
}

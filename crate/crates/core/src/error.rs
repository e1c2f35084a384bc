use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate or antiparallel arc between {0} and {1}")]
    DuplicateEdge(usize, usize),

    #[error("directed cycle detected")]
    Cycle,

    #[error("pair {0} - {1} is not an edge of the graph")]
    NotAnEdge(usize, usize),

    #[error("graph has a v-structure {0} -> {1} <- {2}; preprocess with oriented_subgraph(g, &[]) first")]
    VStructure(usize, usize, usize),

    #[error("graph is not chordal")]
    NotChordal,

    #[error("{what}: instance size {actual} exceeds limit {limit}")]
    SizeLimit {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("protocol violation: {0}")]
    Protocol(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for errors caused by exceeding an exhaustive-search budget.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::SizeLimit { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid graph: {0}")]
    Graph(String),

    #[error("invalid relation tree: {0}")]
    Tree(String),

    #[error("invalid instance spec: {0}")]
    Spec(String),

    #[error("invalid sweep config: {0}")]
    Config(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph has no edges")]
    Edgeless,

    #[error("need at least {need} vertices, graph has {n}")]
    TooFewVertices { need: usize, n: usize },

    #[error("{what} is limited to n <= {max}, got n = {n}")]
    TooLarge { what: &'static str, max: usize, n: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

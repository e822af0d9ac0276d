use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("node {node} is out of range for a graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("block {block} is out of range for K = {k}")]
    BlockOutOfRange { block: usize, k: usize },

    #[error("partition covers {got} nodes, graph has {expected}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("moving node {node} would empty block {block}")]
    EmptiesBlock { node: usize, block: usize },

    #[error("node {node} is already in block {block}")]
    NoOpMove { node: usize, block: usize },

    #[error("block statistics carry no edges")]
    NoEdges,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("corpus not found: {}", .0.display())]
    CorpusNotFound(PathBuf),

    #[error("empty corpus: no procedure definitions under {}", .0.display())]
    EmptyCorpus(PathBuf),

    #[error("empty graph")]
    EmptyGraph,

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("insufficient tail: {usable} usable bins, need at least 3")]
    InsufficientTail { usable: usize },

    #[error("fitted exponent {gamma} is not positive: the tail does not decay")]
    NonDecayingTail { gamma: f64 },

    #[error(
        "matrix size {n} exceeds the dense limit {limit}; raise the limit, use the arnoldi method, or analyze a subgraph"
    )]
    DenseLimit { n: usize, limit: usize },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}

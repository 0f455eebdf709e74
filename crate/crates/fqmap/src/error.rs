use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1} qubits")]
    DimensionMismatch(usize, usize),
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("edge references unknown label `{0}`")]
    DanglingEndpoint(String),
    #[error("invalid edge: {0}")]
    InvalidEdge(String),
    #[error("scheme does not match graph: {0}")]
    SchemeMismatch(String),
    #[error("geometry mismatch: {0}")]
    Geometry(String),
    #[error("scheme is not horizontally and vertically ordered")]
    NotOrdered,
    #[error("graph has no edges; average is undefined")]
    EmptyEdgeSet,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("problem size {n} exceeds the exhaustive-search cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("unknown formula `{0}`")]
    UnknownFormula(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by malformed input or configuration rather than
    /// by the mathematics of the request.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::Io(_)
                | Error::Json(_)
                | Error::DuplicateLabel(_)
                | Error::DanglingEndpoint(_)
                | Error::InvalidEdge(_)
                | Error::UnknownFormula(_)
        )
    }
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("arity must be at least 1")]
    InvalidArity,
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate edge {0}")]
    DuplicateEdge(String),
    #[error("child tuple has {found} entries, arity is {expected}")]
    TupleLength { expected: usize, found: usize },
    #[error("transition from `{from}` to {children} is listed twice")]
    DuplicateTransition { from: String, children: String },
    #[error("transition counts must be at least 1")]
    ZeroCount,
    #[error("automaton is not trim")]
    NotTrim,
    #[error("invalid merge partition: {0}")]
    InvalidPartition(String),
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("invalid regularity certificate: {0}")]
    InvalidCertificate(String),
    #[error("automaton is not symmetric: {0}")]
    NotSymmetric(String),
    #[error("block height must be at least 1")]
    InvalidHeight,
    #[error("invalid block: {0}")]
    InvalidBlock(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("{what} would produce {count} items, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        count: String,
        cap: u64,
    },
    #[error("search exceeded its budget of {0} nodes")]
    BudgetExceeded(u64),
    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("malformed document: {0}")]
    Document(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph on {n} vertices exceeds the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("adjacency rows are not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("vertex sets overlap in {0:?}")]
    Overlap(Vec<usize>),

    #[error("invalid graph expression: {0}")]
    InvalidSpec(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("not a quasi-order: {0}")]
    NotQuasiOrder(String),
    #[error("label {label} is not an element of an order of size {size}")]
    LabelNotInOrder { label: usize, size: usize },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },

    #[error("script step {step} failed: {source}")]
    Script {
        step: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("search refused: {0}")]
    SearchRefused(String),
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
    #[error("malformed witness: {0}")]
    MalformedWitness(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph is not {class}-free: {forbidden} found on {witness:?}")]
    ClassViolation { class: String, forbidden: String, witness: Vec<usize> },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("vector length {found} does not match {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("CSS orthogonality violated: x{x} and z{z} overlap on an odd number of qubits")]
    Orthogonality { x: usize, z: usize },

    #[error("unknown cell {0}")]
    UnknownCell(String),

    #[error("1-skeleton is disconnected ({} components)", components.len())]
    Disconnected { components: Vec<Vec<usize>> },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("group order {order} exceeds the cap of {cap}")]
    GroupTooLarge { order: usize, cap: usize },

    #[error("automorphism search refused: order {order} exceeds the cap of {cap}; use the no-dedupe mode")]
    AutomorphismCap { order: usize, cap: usize },

    #[error("voltage is not flat on face {face}")]
    NotFlat { face: usize },

    #[error("search budget of {budget} nodes exhausted after {found} assignments")]
    NodeBudget {
        budget: u64,
        found: usize,
        partial: Vec<Vec<usize>>,
    },

    #[error("presentation still has {generators} generators after simplification (limit {limit})")]
    Unsimplifiable { generators: usize, limit: usize },

    #[error("kernel dimension {dim} exceeds the exact-search cap of {cap}; use the estimator")]
    KernelCap { dim: usize, cap: usize },

    #[error("lifts use different groups")]
    GroupMismatch,

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("parse error in {what}: {msg}")]
    Parse { what: String, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(what: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Parse {
            what: what.into(),
            msg: msg.into(),
        }
    }
}

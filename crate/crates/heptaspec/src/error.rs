use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("chain length must be at least 1, got {0}")]
    InvalidOrder(usize),

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("values are not a conjugate pair: {0} vs {1}")]
    NotConjugatePair(String, String),

    #[error("irrational residue where a rational was required: {0}")]
    IrrationalResidue(String),

    #[error("index out of range: {0}")]
    IndexRange(String),

    #[error("no published minor-case formula covers the deletion pair (s={s}, t={t})")]
    FormulaGap { s: usize, t: usize },

    #[error("enumeration oracle is limited to {limit} edges, graph has {edges}")]
    TooManyEdges { edges: usize, limit: usize },

    #[error("graph is not connected")]
    Disconnected,

    #[error("block-diagonalization self-check failed: {0}")]
    DecompositionCheck(String),

    #[error("singular matrix where an invertible one was required")]
    Singular,

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("{0}")]
    UnsupportedMethod(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the engine.
///
/// Index lists carried by variants are 1-based so they read the same way as
/// the basis labels `X1..X2n`.
#[derive(Debug, Error)]
pub enum Error {
    #[error("not an exact rational: {0:?}")]
    Rational(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("dimension must be a positive even integer, got {0}")]
    OddDimension(usize),

    #[error("tensor rank mismatch: {0}")]
    Rank(String),

    #[error("invalid index slot: {0}")]
    Slot(String),

    #[error("Lie algebra axioms violated: {0}")]
    InvalidAlgebra(String),

    #[error("P is not an involution: (P^2)[{at:?}] differs from the identity")]
    NotInvolution { at: Vec<usize> },

    #[error("P is not traceless: trace(P) = {0}")]
    NonZeroTrace(String),

    #[error("metric is not symmetric at {at:?}")]
    AsymmetricMetric { at: Vec<usize> },

    #[error("metric is degenerate (determinant zero)")]
    DegenerateMetric,

    #[error("metric is not compatible with P: g(PX_i, PX_j) != g(X_i, X_j) at {at:?}")]
    Incompatible { at: Vec<usize> },

    #[error("P is not in adapted pair-swap form; skip the eigenbasis diagnostic")]
    NotAdapted,

    #[error("internal consistency check `{check}` failed at {at:?}")]
    Consistency { check: String, at: Vec<usize> },

    #[error("manifold is not in the class W1")]
    NotW1,

    #[error("class set problem: {0}")]
    Lattice(String),

    #[error("epsilon must be 1 or -1, got {0}")]
    Epsilon(String),

    #[error("invalid manifold document: {0}")]
    Document(String),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn consistency(check: &str, at: Vec<usize>) -> Self {
        Error::Consistency {
            check: check.to_string(),
            at: at.into_iter().map(|i| i + 1).collect(),
        }
    }
}

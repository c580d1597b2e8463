use thiserror::Error;

/// Errors raised by the engine.
///
/// `Input`-like variants describe malformed data or violated preconditions;
/// `Hypotheses` collects every failed assumption when a rigid context is
/// rejected; `Internal` signals that a construction produced something its
/// own post-conditions reject, which points at a broken hypothesis upstream.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("relation {index} is not admissible: {reason}")]
    NonAdmissible { index: usize, reason: String },

    #[error("quotient algebra is not finite-dimensional within path length cap {cap}")]
    InfiniteDimensional { cap: usize },

    #[error("relation `{relation}` does not vanish at vertex `{vertex}`")]
    RelationViolation { relation: String, vertex: String },

    #[error("morphism does not intertwine arrow `{0}`")]
    NotIntertwiner(String),

    #[error("size cap exceeded: {0}")]
    CapExceeded(String),

    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    #[error("hypotheses not satisfied: {}", .0.join("; "))]
    Hypotheses(Vec<String>),

    #[error("operation requires {expected} mode")]
    ModeMismatch { expected: &'static str },

    #[error("domain is not cofibrant; replace it first with `cofibrant_replacement`")]
    NotCofibrant,

    #[error("morphism is not a weak equivalence")]
    NotWeakEquivalence,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("objects or classes do not match: {0}")]
    Mismatch(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("internal assertion failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

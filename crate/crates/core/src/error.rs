use thiserror::Error;

/// Errors surfaced by the engine. Failed mathematical checks are report
/// content, not errors; these cover contract violations and resource limits.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("relation violated: {0}")]
    RelationViolated(String),

    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("morphism kind mismatch: {0}")]
    KindMismatch(String),

    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),

    #[error("degree out of range: {0}")]
    DegreeRange(String),

    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    #[error("pinning failed: {0}")]
    PinningFailed(String),

    #[error("presentation parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

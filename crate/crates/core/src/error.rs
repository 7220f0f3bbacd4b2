use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank out of range: {0}")]
    RankOutOfRange(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("not a half-integer: {0}")]
    NotHalfIntegral(String),
    #[error("parity mismatch: {0}")]
    ParityMismatch(String),
    #[error("invalid signed permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid segment: {0}")]
    InvalidSegment(String),
    #[error("no even diagram: {0}")]
    NoEvenDiagram(String),
    #[error("inconsistent labels: {0}")]
    InconsistentLabels(String),
    #[error("non-consecutive jumps: {0}")]
    NonConsecutiveJumps(String),
    #[error("not jointly residual: {0}")]
    NotJointlyResidual(String),
    #[error("segments are linked: {0}")]
    Linked(String),
    #[error("unlinked segments: {0}")]
    Unlinked(String),
    #[error("invalid epsilon for kind: {0}")]
    InvalidEpsilon(String),
    #[error("rank guard exceeded: rank {rank} > {limit}")]
    RankGuard { rank: usize, limit: usize },
    #[error("kind/move mismatch: {0}")]
    MoveMismatch(String),
    #[error("non-equivalent endpoints")]
    NonEquivalentEndpoints,
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

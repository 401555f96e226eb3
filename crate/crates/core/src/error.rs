use thiserror::Error;

/// Failures reported by [`crate::preserver::decompose`], one per recovery step.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("image of the basis matrix E({row},{col}) under the centred map is not rank one")]
    NonRankOneImage { row: usize, col: usize },
    #[error("images of E(1,1) and E(1,2) share neither column space nor row space")]
    NoOrientation,
    #[error("recovered scalar map is not a field automorphism")]
    NotAnAutomorphism,
    #[error("images of E({row},{col}) are inconsistent with a standard preserver")]
    InconsistentImage { row: usize, col: usize },
    #[error("recovered T or S is singular")]
    SingularFactor,
    #[error("recovered preserver disagrees with the table at matrix index {index}")]
    TableMismatch { index: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported field order {0}; supported orders are 2, 3, 4, 5, 7, 8, 9")]
    UnsupportedOrder(u32),
    #[error("operands belong to different fields (GF({left}) vs GF({right}))")]
    FieldMismatch { left: u32, right: u32 },
    #[error("element index {index} is out of range for GF({q})")]
    ElementOutOfRange { index: u32, q: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("Frobenius power {power} out of range for extension degree {degree}")]
    AutomorphismOutOfRange { power: u32, degree: u32 },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: String, found: String },
    #[error("matrix is singular")]
    Singular,
    #[error("expected a rank-one matrix, got rank {0}")]
    NotRankOne(usize),
    #[error("rank {rank} out of range 0..={max}")]
    RankOutOfRange { rank: usize, max: usize },
    #[error("enumeration of {count} objects exceeds the budget of {budget}")]
    BudgetExceeded { count: u128, budget: u64 },
    #[error("requires a field with at least three elements (got GF({0}))")]
    FieldTooSmall(u32),
    #[error("requires m >= n >= 2 (got m = {m}, n = {n})")]
    ShapeHypothesis { m: usize, n: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("table is not a permutation of the matrix indices: {0}")]
    NotAPermutation(String),
    #[error("point at infinity has no matrix representative")]
    PointAtInfinity,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
}

pub type Result<T> = std::result::Result<T, Error>;

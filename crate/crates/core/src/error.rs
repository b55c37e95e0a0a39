use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("composition algebra kinds differ: {0} vs {1}")]
    KindMismatch(String, String),
    #[error("unsupported matrix size {0} (expected 2, 3, or the 4x4 negative control)")]
    UnsupportedSize(usize),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("slot {slot} out of range for {copies} copies")]
    SlotOutOfRange { slot: usize, copies: usize },
    #[error("node {node} out of range for rank {rank}")]
    NodeOutOfRange { node: usize, rank: usize },
    #[error("generalized Cartan matrix is not of finite type ({0})")]
    NotFinite(String),
    #[error("invalid generalized Cartan matrix: {0}")]
    InvalidGcm(String),
    #[error("algebra carries no grading")]
    MissingGrading,
    #[error("algebra carries no involution")]
    MissingInvolution,
    #[error("not an ideal: bracket of basis {0} with ideal element {1} leaves the subspace")]
    NotAnIdeal(usize, usize),
    #[error("subspace is not closed under the bracket (basis pair {0}, {1})")]
    NotClosed(usize, usize),
    #[error("Jordan algebra has no identity element")]
    NoIdentity,
    #[error("closure exceeded the dimension bound {0}")]
    ClosureOverflow(usize),
    #[error("element is not homogeneous for the grading")]
    Inhomogeneous,
    #[error("triple system is not of second order: closure reached grade {0}")]
    NotSecondOrder(i32),
    #[error("polynomial degree {0} exceeds the cap of 4")]
    DegreeOverflow(usize),
    #[error("vector fields live on different coordinate spaces")]
    SpaceMismatch,
    #[error("{0} is not in the expected span")]
    NotInSpan(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

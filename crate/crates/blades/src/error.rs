//! Crate-wide error type.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("constraint system is infeasible")]
    Infeasible,
    #[error("vector does not lie in the sum-zero hyperplane V0^n")]
    NotInV0,
    #[error("argument too large: {0}")]
    TooLarge(String),
    #[error("no such diagonal in the triangulation")]
    NoSuchDiagonal,
    #[error("blocks overlap")]
    BlocksOverlap,
    #[error("function is not in the span of plate indicators")]
    NotInPlateSpan,
    #[error("point lies on an affine reflection hyperplane")]
    OnAffineWall,
    #[error("exponential of a non-nilpotent element")]
    NotNilpotent,
    #[error("generating-function truncation is unstable; supply more terms")]
    NeedMoreTerms,
    #[error("evaluation point hits a pole")]
    PoleHit,
    #[error("triangle is not cyclically oriented")]
    BadOrientation,
    #[error("straightening matrix is singular")]
    StraighteningFailed,
    #[error("invalid ordered set partition: {0}")]
    ParseOsp(String),
}

pub type Result<T> = std::result::Result<T, Error>;

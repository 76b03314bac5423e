use thiserror::Error;

use crate::invariant_algebra::GroupFamily;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("coefficient vector of length {len} does not match degree {degree}")]
    MalformedPolynomial { degree: usize, len: usize },

    #[error("invalid group family: {0}")]
    InvalidFamily(String),

    #[error("closure of {family} exceeded {limit} elements")]
    ClosureOverflow { family: GroupFamily, limit: usize },

    #[error("closure of {family} produced {found} elements, expected {expected}")]
    GroupOrder {
        family: GroupFamily,
        expected: usize,
        found: usize,
    },

    #[error("unsupported family for invariant generators: {0}")]
    UnsupportedFamily(GroupFamily),

    #[error("polynomial is not a relative invariant (element {element}, residual {residual:.3e})")]
    NotRelativeInvariant { element: usize, residual: f64 },

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("zero state vector")]
    ZeroState,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid spin: {0}")]
    InvalidSpin(String),

    #[error("invalid rank {k} for a space of dimension {dim}")]
    InvalidRank { k: usize, dim: usize },

    #[error("basis is not orthonormal (Gram deviation {deviation:.3e})")]
    NotOrthonormal { deviation: f64 },

    #[error("expected {expected} points for this spin, found {found}")]
    PointCount { expected: usize, found: usize },

    #[error("point {index} is not on the unit sphere (norm {norm})")]
    OffSphere { index: usize, norm: f64 },

    #[error("no solutions of the degree equation for {family} at 2s = {doubled}")]
    EmptySubspace { family: GroupFamily, doubled: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
}

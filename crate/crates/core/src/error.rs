use num::BigInt;
use thiserror::Error;

use crate::fan::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("zero vector has no primitive representative")]
    ZeroVector,

    #[error("vector {0} is not primitive")]
    NotPrimitive(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("not strictly convex: cone contains a line")]
    NotStrictlyConvex,

    #[error("invalid fan:\n{0}")]
    InvalidFan(ValidationReport),

    #[error("fan is not complete; root set may be infinite")]
    NotComplete,

    #[error("comorphism requires localization: pairing {0} is negative")]
    RequiresLocalization(BigInt),

    #[error("skeleton dimension {dim} out of range 0..={rank}")]
    SkeletonOutOfRange { dim: usize, rank: usize },

    #[error("root polytope of ray {0} is unbounded")]
    UnboundedPolytope(usize),

    #[error("certificate failure: {0}")]
    Certificate(String),

    #[error("ray index {index} out of range ({len} rays)")]
    RayIndex { index: usize, len: usize },
}

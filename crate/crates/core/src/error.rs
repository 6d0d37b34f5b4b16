//! Shared error type for all geometry operations.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    /// The point lies on the singular line L (r = 0), where the metric,
    /// frame and eigenvector directions are undefined.
    #[error("point lies on the singular line (r = 0)")]
    SingularPoint,

    /// Two tangent vectors (or a vector and a point) have different base points.
    #[error("tangent vectors are based at different points")]
    BaseMismatch,

    /// Consecutive nonsingular samples differ in angle by >= pi, so winding
    /// information is aliased.
    #[error("sampling too coarse at sample {index}: |delta phi| >= pi")]
    SamplingTooCoarse { index: usize },

    /// Every sample of the curve lies on the singular line.
    #[error("every curve sample lies on the singular line")]
    AllSingular,

    /// The operation requires a closed curve.
    #[error("curve is not closed")]
    NotClosed,

    /// Transport cannot start from a point on the singular line.
    #[error("transport start point lies on the singular line")]
    SingularStart,

    /// A singular run touches an endpoint of an open curve, so the crossing
    /// directions phi- / phi+ cannot both be determined.
    #[error("a singular-line crossing touches an endpoint of an open curve")]
    CurveEndsOnL,

    /// The curve lingers on the singular line for too many samples; the
    /// crossing rule assumes transversal passes.
    #[error("curve is degenerate: more than 25% of samples lie within the crossing threshold")]
    DegenerateCurve,

    /// The parameter map sends these spring constants onto the singular line.
    #[error("the Hessian image lies on the singular line (repeated eigenvalues)")]
    SingularImage,

    /// Cover-space geometry is only specified for the double cover (depth 1).
    #[error("unsupported covering depth {depth}: metric and phase are defined for depth 1 only")]
    UnsupportedDepth { depth: u32 },

    /// Malformed curve input (too few samples, mismatched endpoints, ...).
    #[error("invalid curve: {reason}")]
    InvalidCurve { reason: String },
}

pub type Result<T> = std::result::Result<T, GeomError>;

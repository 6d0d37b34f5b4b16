//! The branched double covering of the trace-free plane and its iterates:
//! curve lifting, the pullback metric upstairs, and phases of lifted loops.
//!
//! The covering map doubles the angle, r e^{i phibar} -> r e^{i 2 phibar}
//! (depth d iterates it d times), with the singular line as the branch
//! locus. Upstairs, loops that flip eigenvectors downstairs fail to close,
//! which is the whole point: the deck transformation phibar -> phibar + pi
//! tracks the eigenvector sign. The trace coordinate z rides along
//! untouched. Metric and phase are only defined for the double cover
//! (depth 1); deeper lifts are purely topological.

use serde::Serialize;

use crate::curve::MatrixCurve;
use crate::error::{GeomError, Result};
use crate::symspace::{wrap_angle, SymPoint};

use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CoverPoint {
    pub rbar: f64,
    /// Angle upstairs; continuous (unwrapped) along lifted curves.
    pub phibar: f64,
    pub z: f64,
    /// d = 1 is the double cover; d = 2 covers the cover, and so on.
    pub depth: u32,
}

/// The covering projection: radius kept, angle multiplied by 2^depth, z
/// passed through. The branch point maps to the apex regardless of angle.
pub fn project(q: &CoverPoint) -> SymPoint {
    if q.rbar == 0.0 {
        return SymPoint::new(0.0, 0.0, q.z);
    }
    let factor = (1u64 << q.depth) as f64;
    SymPoint::from_cylindrical(q.rbar, wrap_angle(factor * q.phibar), q.z)
}

/// The nontrivial deck transformation of the double cover (and the order-2
/// deck element of deeper covers): phibar -> phibar + pi.
pub fn deck(q: &CoverPoint) -> CoverPoint {
    CoverPoint {
        phibar: q.phibar + PI,
        ..*q
    }
}

/// A curve lifted to the covering space.
#[derive(Debug, Clone)]
pub struct LiftedCurve {
    points: Vec<CoverPoint>,
    /// Smooth angle sweep upstairs (branch-point passes contribute zero).
    smooth_sweep: f64,
    depth: u32,
    closed: bool,
}

impl LiftedCurve {
    pub fn points(&self) -> &[CoverPoint] {
        &self.points
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn closed(&self) -> bool {
        self.closed
    }

    pub fn smooth_sweep(&self) -> f64 {
        self.smooth_sweep
    }

    /// Winding number of the lifted curve around the branch point.
    pub fn winding(&self) -> Result<f64> {
        if !self.closed {
            return Err(GeomError::NotClosed);
        }
        Ok(self.smooth_sweep / (2.0 * PI))
    }
}

/// Lift a curve through the angle-halving map, `depth` times.
///
/// The lift divides the unwrapped angle track by 2^depth and offsets it by
/// pi when `start_branch` is negative (the deck-transformed lift). A closed
/// downstairs loop lifts to a closed path exactly when its full track sweep
/// is a multiple of 2^depth * 2pi; a loop of odd winding ends at the deck
/// transform of its start instead.
pub fn lift_curve(c: &MatrixCurve, start_branch: i8, depth: u32) -> Result<LiftedCurve> {
    if depth == 0 || depth > 52 {
        return Err(GeomError::UnsupportedDepth { depth });
    }
    let factor = (1u64 << depth) as f64;
    let offset = if start_branch < 0 { PI } else { 0.0 };
    let samples = c.samples();
    let track = c.unwrapped_phi();
    let points: Vec<CoverPoint> = samples
        .iter()
        .zip(track)
        .map(|(p, &phi)| CoverPoint {
            rbar: p.r(),
            phibar: phi / factor + offset,
            z: p.z(),
            depth,
        })
        .collect();
    let first = &points[0];
    let last = &points[points.len() - 1];
    let closed = c.closed()
        && (last.rbar == 0.0 && first.rbar == 0.0
            || wrap_angle(last.phibar - first.phibar).abs() < 1e-9);
    Ok(LiftedCurve {
        points,
        smooth_sweep: c.smooth_sweep() / factor,
        depth,
        closed,
    })
}

/// Pullback metric in polar coordinates upstairs: diag(4, 4 rbar^2).
/// Only the double cover carries the geometry.
pub fn cover_metric_at(q: &CoverPoint) -> Result<[[f64; 2]; 2]> {
    if q.depth != 1 {
        return Err(GeomError::UnsupportedDepth { depth: q.depth });
    }
    if q.rbar == 0.0 {
        return Err(GeomError::SingularPoint);
    }
    Ok([[4.0, 0.0], [0.0, 4.0 * q.rbar * q.rbar]])
}

/// Geometric phase of a closed lifted curve: the connection form upstairs
/// is d(phibar), so the phase is the full angle sweep, 2 pi times the
/// winding of the lifted curve.
pub fn cover_phase(lc: &LiftedCurve) -> Result<f64> {
    if lc.depth != 1 {
        return Err(GeomError::UnsupportedDepth { depth: lc.depth });
    }
    if !lc.closed {
        return Err(GeomError::NotClosed);
    }
    Ok(lc.smooth_sweep)
}

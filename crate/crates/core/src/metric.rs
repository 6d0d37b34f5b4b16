//! The cone metric on the space of symmetric matrices.
//!
//! The metric is the pullback of the Euclidean metric under the cone
//! parametrization (x, y) -> (x, y, sqrt(3) r), extended by a flat z factor:
//! in cartesian coordinates g = I + (3/r^2) q q^T with q = (x, y, 0), and in
//! cylindrical coordinates g = diag(4, r^2, 1). Its Levi-Civita connection
//! makes unit eigenvector fields parallel, which is the whole point of the
//! construction. Everything here is analytic; finite differences appear only
//! in the cross-validation layer.

use serde::Serialize;

use crate::curve::MatrixCurve;
use crate::error::{GeomError, Result};
use crate::symspace::{SymPoint, TangentVec};

/// Metric tensor evaluated at one point, in both charts.
#[derive(Debug, Clone, Serialize)]
pub struct MetricAtPoint {
    pub base: SymPoint,
    /// g_ij in the cartesian basis (partial_x, partial_y, partial_z).
    pub cart: [[f64; 3]; 3],
    /// Diagonal entries (4, r^2, 1) in the cylindrical basis.
    pub pol: [f64; 3],
}

/// The reference orthonormal frame (e1, e2, e3) in cartesian components.
///
/// e1 and e2 are the polar frame rotated back by the polar angle, which makes
/// them pi-periodic in phi; e3 is partial_z.
#[derive(Debug, Clone, Serialize)]
pub struct FrameAtPoint {
    pub base: SymPoint,
    pub e1: [f64; 3],
    pub e2: [f64; 3],
    pub e3: [f64; 3],
}

pub fn metric_at(p: &SymPoint) -> Result<MetricAtPoint> {
    let (c, s) = p.unit_direction()?;
    let cart = [
        [1.0 + 3.0 * c * c, 3.0 * c * s, 0.0],
        [3.0 * c * s, 1.0 + 3.0 * s * s, 0.0],
        [0.0, 0.0, 1.0],
    ];
    Ok(MetricAtPoint {
        base: *p,
        cart,
        pol: [4.0, p.r() * p.r(), 1.0],
    })
}

/// Metric inner product of two tangent vectors based at `p`.
pub fn inner(p: &SymPoint, u: &TangentVec, v: &TangentVec) -> Result<f64> {
    if !u.base().same_point(p) || !v.base().same_point(p) {
        return Err(GeomError::BaseMismatch);
    }
    let g = metric_at(p)?;
    let a = u.coordinate_components()?;
    let b = v.coordinate_components()?;
    let mut acc = 0.0;
    for (&a_i, row) in a.iter().zip(&g.cart) {
        for (&b_j, &g_ij) in b.iter().zip(row) {
            acc += a_i * g_ij * b_j;
        }
    }
    Ok(acc)
}

/// Quadratic form d^T g(p) d without forming the matrix:
/// |d|^2 + 3 (q_hat . d_xy)^2.
fn metric_quad(p: &SymPoint, d: [f64; 3]) -> Result<f64> {
    let (c, s) = p.unit_direction()?;
    let radial = c * d[0] + s * d[1];
    Ok(d[0] * d[0] + d[1] * d[1] + d[2] * d[2] + 3.0 * radial * radial)
}

/// Length of a sampled curve under the cone metric, by per-segment Simpson
/// quadrature of sqrt(gamma'^T g gamma'). Second-order accurate in the
/// sample spacing for smooth curves.
pub fn curve_length(c: &MatrixCurve) -> Result<f64> {
    let samples = c.samples();
    if samples.iter().any(|p| p.is_singular()) {
        return Err(GeomError::SingularPoint);
    }
    let mut total = 0.0;
    for w in samples.windows(2) {
        let (p, q) = (&w[0], &w[1]);
        let d = [q.x() - p.x(), q.y() - p.y(), q.z() - p.z()];
        let mid = SymPoint::new(
            0.5 * (p.x() + q.x()),
            0.5 * (p.y() + q.y()),
            0.5 * (p.z() + q.z()),
        );
        if mid.is_singular() {
            return Err(GeomError::SingularPoint);
        }
        let f0 = metric_quad(p, d)?.sqrt();
        let fm = metric_quad(&mid, d)?.sqrt();
        let f1 = metric_quad(q, d)?.sqrt();
        total += (f0 + 4.0 * fm + f1) / 6.0;
    }
    Ok(total)
}

/// The cone parametrization (x, y) -> (x, y, sqrt(3) r); z is ignored.
pub fn cone_embed(p: &SymPoint) -> [f64; 3] {
    [p.x(), p.y(), 3.0f64.sqrt() * p.r()]
}

pub fn frame_at(p: &SymPoint) -> Result<FrameAtPoint> {
    let (c, s) = p.unit_direction()?;
    Ok(FrameAtPoint {
        base: *p,
        e1: [c * c / 2.0 + s * s, -c * s / 2.0, 0.0],
        e2: [-c * s / 2.0, s * s / 2.0 + c * c, 0.0],
        e3: [0.0, 0.0, 1.0],
    })
}

/// The connection 1-form omega of the frame (e1, e2, e3), evaluated on X.
///
/// omega(X) = g(partial_phi, X) / (2 r^2), which is 1/2 d(phi). Evaluated
/// through the frame components this is exact: omega vanishes identically on
/// radial and vertical directions.
pub fn connection_form(p: &SymPoint, x: &TangentVec) -> Result<f64> {
    if !x.base().same_point(p) {
        return Err(GeomError::BaseMismatch);
    }
    let (c, s) = p.unit_direction()?;
    let a = x.frame_components();
    Ok((-s * a[0] + c * a[1]) / (2.0 * p.r()))
}

/// Christoffel symbols of the cone metric in cylindrical coordinates
/// (r, phi, z), from g = diag(4, r^2, 1).
#[derive(Debug, Clone, Copy)]
pub struct Christoffel {
    r: f64,
}

impl Christoffel {
    /// Gamma^i_{kl} with index order (r, phi, z) = (0, 1, 2).
    pub fn gamma(&self, i: usize, k: usize, l: usize) -> f64 {
        match (i, k, l) {
            (0, 1, 1) => -self.r / 4.0,
            (1, 0, 1) | (1, 1, 0) => 1.0 / self.r,
            _ => 0.0,
        }
    }

    pub fn table(&self) -> [[[f64; 3]; 3]; 3] {
        let mut t = [[[0.0; 3]; 3]; 3];
        for (i, ti) in t.iter_mut().enumerate() {
            for (k, tik) in ti.iter_mut().enumerate() {
                for (l, slot) in tik.iter_mut().enumerate() {
                    *slot = self.gamma(i, k, l);
                }
            }
        }
        t
    }
}

pub fn christoffel_at(p: &SymPoint) -> Result<Christoffel> {
    if p.is_singular() {
        return Err(GeomError::SingularPoint);
    }
    Ok(Christoffel { r: p.r() })
}

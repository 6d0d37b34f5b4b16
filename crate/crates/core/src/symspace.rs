//! Coordinate charts and tangent vectors for the space of 2x2 real symmetric
//! matrices.
//!
//! A matrix [[a11, a12], [a12, a22]] is coordinatized as (x, y, z) with
//! x = (a11 - a22)/2, y = a12, z = (a11 + a22)/2, so the matrix reads
//! [[x + z, y], [y, -x + z]]. The trace-free part lives in the (x, y) plane,
//! with cylindrical coordinates (r, phi, z). The angle phi is undefined on
//! the singular line r = 0 (repeated eigenvalues) and is stored as an
//! explicit `Option` there, never as a default number.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{GeomError, Result};

/// Reduce an angle difference to its principal value in (-pi, pi].
///
/// The boundary case |d| = pi is a genuine tie between the two branches;
/// it is broken toward +pi, which is the convention used everywhere the
/// crate continues an angle track across a branch cut or a singular-line
/// crossing.
pub fn wrap_angle(d: f64) -> f64 {
    let w = d.rem_euclid(TAU);
    if w > PI {
        w - TAU
    } else {
        w
    }
}

/// A point of Sym(2, R) in cartesian coordinates, with derived cylindrical
/// coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymPoint {
    x: f64,
    y: f64,
    z: f64,
    r: f64,
    /// `None` exactly on the singular line r = 0.
    phi: Option<f64>,
}

impl SymPoint {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        let r = x.hypot(y);
        let phi = if r == 0.0 {
            None
        } else {
            let a = y.atan2(x);
            // atan2 can return exactly -pi for y = -0.0; fold onto (-pi, pi].
            Some(if a <= -PI { a + TAU } else { a })
        };
        SymPoint { x, y, z, r, phi }
    }

    /// Build a point from the three entries of a symmetric matrix.
    pub fn from_entries(a11: f64, a12: f64, a22: f64) -> Self {
        Self::new((a11 - a22) / 2.0, a12, (a11 + a22) / 2.0)
    }

    /// The three matrix entries (a11, a12, a22). Exact inverse of
    /// [`SymPoint::from_entries`].
    pub fn entries(&self) -> (f64, f64, f64) {
        (self.x + self.z, self.y, -self.x + self.z)
    }

    /// Construct from cylindrical coordinates, keeping the given radius and
    /// (normalized) angle rather than re-deriving them from (x, y).
    pub fn from_cylindrical(r: f64, phi: f64, z: f64) -> Self {
        assert!(r >= 0.0, "cylindrical radius must be nonnegative");
        if r == 0.0 {
            return Self::new(0.0, 0.0, z);
        }
        let phi_n = wrap_angle(phi);
        SymPoint {
            x: r * phi_n.cos(),
            y: r * phi_n.sin(),
            z,
            r,
            phi: Some(phi_n),
        }
    }

    pub fn x(&self) -> f64 {
        self.x
    }
    pub fn y(&self) -> f64 {
        self.y
    }
    pub fn z(&self) -> f64 {
        self.z
    }
    pub fn r(&self) -> f64 {
        self.r
    }

    /// Principal angle in (-pi, pi], or `None` on the singular line.
    pub fn phi(&self) -> Option<f64> {
        self.phi
    }

    pub fn is_singular(&self) -> bool {
        self.r == 0.0
    }

    /// The matrix [[x+z, y], [y, -x+z]] as rows.
    pub fn matrix(&self) -> [[f64; 2]; 2] {
        [[self.x + self.z, self.y], [self.y, -self.x + self.z]]
    }

    /// (cos phi, sin phi) = (x/r, y/r); errors on the singular line.
    pub fn unit_direction(&self) -> Result<(f64, f64)> {
        if self.r == 0.0 {
            return Err(GeomError::SingularPoint);
        }
        Ok((self.x / self.r, self.y / self.r))
    }

    /// Coordinate equality, used for base-point checks on tangent vectors.
    pub fn same_point(&self, other: &SymPoint) -> bool {
        self.x == other.x && self.y == other.y && self.z == other.z
    }

    pub fn dist(&self, other: &SymPoint) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}

/// A tangent vector at a [`SymPoint`], stored as components in the reference
/// orthonormal frame (e1, e2, e3).
///
/// Because the frame is orthonormal for the cone metric, the metric norm is
/// just the Euclidean norm of the stored components. The frame itself is
/// undefined on the singular line; raw frame components may still be carried
/// there (parallel transport does this when a curve crosses the line), but
/// any conversion involving the chart returns `SingularPoint`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TangentVec {
    base: SymPoint,
    frame: [f64; 3],
}

impl TangentVec {
    pub fn from_frame_components(base: SymPoint, frame: [f64; 3]) -> Self {
        TangentVec { base, frame }
    }

    /// From components (u_r, u_phi, u_z) in the cylindrical coordinate basis
    /// (partial_r, partial_phi, partial_z).
    pub fn from_cylindrical_components(base: SymPoint, u: [f64; 3]) -> Result<Self> {
        let (c, s) = base.unit_direction()?;
        let r = base.r();
        // partial_r = 2 cos(phi) e1 + 2 sin(phi) e2,
        // partial_phi = -r sin(phi) e1 + r cos(phi) e2.
        let a1 = 2.0 * c * u[0] - r * s * u[1];
        let a2 = 2.0 * s * u[0] + r * c * u[1];
        Ok(TangentVec {
            base,
            frame: [a1, a2, u[2]],
        })
    }

    /// From components in the cartesian coordinate basis
    /// (partial_x, partial_y, partial_z).
    pub fn from_coordinate_components(base: SymPoint, v: [f64; 3]) -> Result<Self> {
        let (c, s) = base.unit_direction()?;
        let r = base.r();
        let u_r = c * v[0] + s * v[1];
        let u_phi = (-s * v[0] + c * v[1]) / r;
        Self::from_cylindrical_components(base, [u_r, u_phi, v[2]])
    }

    pub fn base(&self) -> &SymPoint {
        &self.base
    }

    pub fn frame_components(&self) -> [f64; 3] {
        self.frame
    }

    /// Components in the cartesian coordinate basis; errors on the singular
    /// line, where the frame has no direction.
    pub fn coordinate_components(&self) -> Result<[f64; 3]> {
        let (c, s) = self.base.unit_direction()?;
        let e1 = [c * c / 2.0 + s * s, -c * s / 2.0];
        let e2 = [-c * s / 2.0, s * s / 2.0 + c * c];
        Ok([
            self.frame[0] * e1[0] + self.frame[1] * e2[0],
            self.frame[0] * e1[1] + self.frame[1] * e2[1],
            self.frame[2],
        ])
    }

    /// Metric norm (Euclidean norm of the frame components).
    pub fn norm(&self) -> f64 {
        let [a, b, c] = self.frame;
        (a * a + b * b + c * c).sqrt()
    }
}

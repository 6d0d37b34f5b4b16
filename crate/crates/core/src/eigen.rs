//! Closed-form and numeric eigendecomposition of 2x2 symmetric matrices.
//!
//! The closed form lives in cylindrical coordinates: the eigenvalues are
//! z + r and z - r, and the leading eigenvector is the half-angle direction
//! (cos(phi/2), sin(phi/2)) for a chosen continuous branch of phi. The
//! numeric solver works purely on matrix entries and never reads an angle,
//! so it serves as an independent oracle for everything the geometry stack
//! produces.

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::symspace::{wrap_angle, SymPoint};

#[derive(Debug, Clone, Copy, Serialize)]
pub struct EigenPair {
    /// Larger eigenvalue, z + r.
    pub lambda1: f64,
    /// Smaller eigenvalue, z - r.
    pub lambda2: f64,
    pub v1: [f64; 2],
    pub v2: [f64; 2],
}

/// Half-angle eigenvectors on the caller's angle branch.
///
/// `phi_branch` must be congruent to the point's principal angle mod 2*pi;
/// shifting the branch by 2*pi negates both eigenvectors while leaving the
/// eigenvalues untouched. No sign normalization is applied, which is what
/// lets transport tests compare vectors rather than lines.
pub fn eigen_closed_form(p: &SymPoint, phi_branch: f64) -> Result<EigenPair> {
    let phi = p.phi().ok_or(GeomError::SingularPoint)?;
    debug_assert!(
        wrap_angle(phi_branch - phi).abs() < 1e-6,
        "phi_branch {phi_branch} is not a branch of the principal angle {phi}"
    );
    let (sh, ch) = (phi_branch / 2.0).sin_cos();
    Ok(EigenPair {
        lambda1: p.z() + p.r(),
        lambda2: p.z() - p.r(),
        v1: [ch, sh],
        v2: [-sh, ch],
    })
}

/// Entry-only eigensolver.
///
/// Returns v1 with nonnegative first component (nonnegative second when the
/// first vanishes); at r = 0 every direction is an eigenvector and the
/// standard basis is returned.
pub fn eigen_numeric(p: &SymPoint) -> EigenPair {
    let (a11, a12, a22) = p.entries();
    let mean = 0.5 * (a11 + a22);
    let half_diff = 0.5 * (a11 - a22);
    let rad = half_diff.hypot(a12);
    let (lambda1, lambda2) = (mean + rad, mean - rad);

    if rad == 0.0 {
        return EigenPair {
            lambda1,
            lambda2,
            v1: [1.0, 0.0],
            v2: [0.0, 1.0],
        };
    }

    // (A - lambda1) has rank one; pick the better-conditioned row solve.
    let cand_a = [a12, lambda1 - a11];
    let cand_b = [lambda1 - a22, a12];
    let pick = if half_diff >= 0.0 { cand_b } else { cand_a };
    let norm = pick[0].hypot(pick[1]);
    let mut v1 = [pick[0] / norm, pick[1] / norm];
    if v1[0] < 0.0 || (v1[0] == 0.0 && v1[1] < 0.0) {
        v1 = [-v1[0], -v1[1]];
    }
    let mut v2 = [-v1[1], v1[0]];
    if v2[0] < 0.0 || (v2[0] == 0.0 && v2[1] < 0.0) {
        v2 = [-v2[0], -v2[1]];
    }
    EigenPair {
        lambda1,
        lambda2,
        v1,
        v2,
    }
}

/// Euclidean norm of the Rayleigh residual A v - (v^T A v) v; zero exactly
/// when the unit vector v is an eigenvector of the matrix at `p`.
pub fn eigen_residual(p: &SymPoint, v: [f64; 2]) -> f64 {
    let m = p.matrix();
    let av = [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ];
    let rayleigh = v[0] * av[0] + v[1] * av[1];
    (av[0] - rayleigh * v[0]).hypot(av[1] - rayleigh * v[1])
}

/// Angle between two directions modulo sign, in [0, pi/2]. The atan2 form
/// stays accurate for tiny angles where acos of the dot product cannot
/// resolve below sqrt(machine epsilon).
pub fn angle_mod_sign(u: [f64; 2], v: [f64; 2]) -> f64 {
    let dot = u[0] * v[0] + u[1] * v[1];
    let cross = u[0] * v[1] - u[1] * v[0];
    cross.abs().atan2(dot.abs())
}

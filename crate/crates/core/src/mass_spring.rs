//! Two-point mass-spring chains and the geometry of their stiffness
//! parameters.
//!
//! Each system maps its spring constants to the Hessian of the potential at
//! equilibrium, a symmetric matrix. That map F is linear, so pulling the
//! cone metric back through it equips the parameter space with a metric
//! F*g = M^T g M that measures how much a change of spring constants moves
//! the vibration directions. The open and periodic chains land on the fixed
//! ray x = 0, where the pullback degenerates to the constant 5 (per
//! effective stiffness direction); the periodic chain additionally has a
//! null direction (1, -1) because only the sum of its two constants is
//! physical.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::metric::metric_at;
use crate::symspace::SymPoint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    /// Two masses between two walls, three springs.
    Fixed,
    /// Two masses joined by a single spring.
    Open,
    /// Two masses on a circle of circumference 2a, two springs.
    Periodic,
}

impl Boundary {
    pub fn param_dim(&self) -> usize {
        match self {
            Boundary::Fixed => 3,
            Boundary::Open => 1,
            Boundary::Periodic => 2,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpringSystem {
    pub boundary: Boundary,
    pub kappas: Vec<f64>,
    pub rest_length: f64,
}

impl SpringSystem {
    pub fn new(boundary: Boundary, kappas: Vec<f64>, rest_length: f64) -> Result<Self> {
        if kappas.len() != boundary.param_dim() {
            return Err(GeomError::InvalidCurve {
                reason: format!(
                    "{:?} boundary takes {} spring constants, got {}",
                    boundary,
                    boundary.param_dim(),
                    kappas.len()
                ),
            });
        }
        if rest_length.is_nan() || rest_length <= 0.0 {
            return Err(GeomError::InvalidCurve {
                reason: format!("rest length must be positive, got {rest_length}"),
            });
        }
        Ok(SpringSystem {
            boundary,
            kappas,
            rest_length,
        })
    }
}

/// Potential energy at positions (x1, x2).
pub fn energy(s: &SpringSystem, x1: f64, x2: f64) -> f64 {
    let a = s.rest_length;
    let k = &s.kappas;
    match s.boundary {
        Boundary::Fixed => {
            let d1 = x1 - a;
            let d2 = x2 - x1 - a;
            let d3 = 3.0 * a - x2 - a;
            0.5 * (k[0] * d1 * d1 + k[1] * d2 * d2 + k[2] * d3 * d3)
        }
        Boundary::Open => {
            let d = x2 - x1 - a;
            0.5 * k[0] * d * d
        }
        Boundary::Periodic => {
            let d1 = x2 - x1 - a;
            // Second spring wraps around the circle from x2 back to x1 + 2a.
            let d2 = x1 + 2.0 * a - x2 - a;
            0.5 * (k[0] * d1 * d1 + k[1] * d2 * d2)
        }
    }
}

/// The reference configuration at which the Hessian is evaluated: the fixed
/// chain has the unique equilibrium (a, 2a); the translation-invariant
/// chains use the canonical representative (0, a) of the x2 - x1 = a family.
pub fn equilibrium(s: &SpringSystem) -> (f64, f64) {
    let a = s.rest_length;
    match s.boundary {
        Boundary::Fixed => (a, 2.0 * a),
        Boundary::Open | Boundary::Periodic => (0.0, a),
    }
}

/// Closed-form Hessian of the energy, as a point in matrix space. The
/// energies are quadratic, so this is position-independent.
pub fn hessian(s: &SpringSystem) -> SymPoint {
    let k = &s.kappas;
    let (a11, a12, a22) = match s.boundary {
        Boundary::Fixed => (k[0] + k[1], -k[1], k[1] + k[2]),
        Boundary::Open => (k[0], -k[0], k[0]),
        Boundary::Periodic => (k[0] + k[1], -(k[0] + k[1]), k[0] + k[1]),
    };
    SymPoint::from_entries(a11, a12, a22)
}

/// Hessian by central second differences of the energy at the reference
/// configuration; the energies are quadratic so this is exact up to
/// rounding. Used to validate the closed form.
pub fn hessian_fd(s: &SpringSystem) -> [[f64; 2]; 2] {
    let (x1, x2) = equilibrium(s);
    let h = 1e-4 * s.rest_length;
    let v = |d1: f64, d2: f64| energy(s, x1 + d1, x2 + d2);
    let d11 = (v(h, 0.0) - 2.0 * v(0.0, 0.0) + v(-h, 0.0)) / (h * h);
    let d22 = (v(0.0, h) - 2.0 * v(0.0, 0.0) + v(0.0, -h)) / (h * h);
    let d12 = (v(h, h) - v(h, -h) - v(-h, h) + v(-h, -h)) / (4.0 * h * h);
    [[d11, d12], [d12, d22]]
}

/// Matrix of the linear map F from spring constants to the (x, y, z)
/// coordinates of the Hessian.
#[derive(Debug, Clone)]
pub struct ParamMap {
    pub matrix: DMatrix<f64>,
}

pub fn param_map(boundary: Boundary) -> ParamMap {
    let matrix = match boundary {
        Boundary::Fixed => {
            DMatrix::from_row_slice(3, 3, &[0.5, 0.0, -0.5, 0.0, -1.0, 0.0, 0.5, 1.0, 0.5])
        }
        Boundary::Open => DMatrix::from_row_slice(3, 1, &[0.0, -1.0, 1.0]),
        Boundary::Periodic => DMatrix::from_row_slice(3, 2, &[0.0, 0.0, -1.0, -1.0, 1.0, 1.0]),
    };
    ParamMap { matrix }
}

impl ParamMap {
    /// Image of a parameter vector: the Hessian coordinates (x, y, z).
    pub fn apply(&self, kappas: &[f64]) -> [f64; 3] {
        let k = DVector::from_row_slice(kappas);
        let out = &self.matrix * k;
        [out[0], out[1], out[2]]
    }
}

/// Pullback metric F*g = M^T g(F(kappa)) M on the parameter space,
/// evaluated numerically through the cartesian metric.
pub fn pullback_metric(boundary: Boundary, kappas: &[f64]) -> Result<DMatrix<f64>> {
    let map = param_map(boundary);
    if kappas.len() != boundary.param_dim() {
        return Err(GeomError::InvalidCurve {
            reason: format!(
                "{:?} boundary takes {} spring constants, got {}",
                boundary,
                boundary.param_dim(),
                kappas.len()
            ),
        });
    }
    let xyz = map.apply(kappas);
    let image = SymPoint::new(xyz[0], xyz[1], xyz[2]);
    if image.is_singular() {
        return Err(GeomError::SingularImage);
    }
    let g = metric_at(&image)?;
    let g_mat = DMatrix::from_fn(3, 3, |i, j| g.cart[i][j]);
    Ok(map.matrix.transpose() * g_mat * &map.matrix)
}

/// Closed-form pullback metric of the fixed-boundary chain at the image
/// point (x, y): (1/(4 r^2)) times
///
/// ```text
/// [ 2r^2+3x^2   2r^2-6xy      -3x^2   ]
/// [ 2r^2-6xy    8r^2+12y^2  2r^2+6xy  ]
/// [  -3x^2      2r^2+6xy    2r^2+3x^2 ]
/// ```
///
/// obtained from M^T M + (3/r^2) (M^T q)(M^T q)^T with q = (x, y, 0).
pub fn pullback_fixed_closed_form(image: &SymPoint) -> Result<[[f64; 3]; 3]> {
    if image.is_singular() {
        return Err(GeomError::SingularImage);
    }
    let (x, y) = (image.x(), image.y());
    let r2 = image.r() * image.r();
    let f = 1.0 / (4.0 * r2);
    Ok([
        [
            f * (2.0 * r2 + 3.0 * x * x),
            f * (2.0 * r2 - 6.0 * x * y),
            f * (-3.0 * x * x),
        ],
        [
            f * (2.0 * r2 - 6.0 * x * y),
            f * (8.0 * r2 + 12.0 * y * y),
            f * (2.0 * r2 + 6.0 * x * y),
        ],
        [
            f * (-3.0 * x * x),
            f * (2.0 * r2 + 6.0 * x * y),
            f * (2.0 * r2 + 3.0 * x * x),
        ],
    ])
}

/// Orthonormal basis of the null space of a symmetric positive semidefinite
/// matrix, at relative singular-value threshold `tol`.
pub fn metric_kernel(g: &DMatrix<f64>, tol: f64) -> Vec<DVector<f64>> {
    let svd = g.clone().svd(true, true);
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let v_t = svd.v_t.expect("SVD with V requested");
    let mut basis = Vec::new();
    for (i, &sigma) in svd.singular_values.iter().enumerate() {
        if sigma < tol * sigma_max.max(f64::MIN_POSITIVE) {
            basis.push(v_t.row(i).transpose());
        }
    }
    basis
}

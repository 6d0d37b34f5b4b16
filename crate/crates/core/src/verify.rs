//! Cross-validation of the connection and curvature through three
//! independent formulations.
//!
//! The connection form can be computed extrinsically (finite differences of
//! the orthonormal frame pushed forward onto the embedded cone), through the
//! complexified frame n = (E1 + i E2)/sqrt(2), or intrinsically (Christoffel
//! symbols of the metric, no embedding). All three must agree; the embedded
//! route also yields the second fundamental form, whose determinant checks
//! the flatness of the cone away from the apex, while the Stokes integral of
//! the connection form around the singular line picks up the concentrated
//! curvature pi. Everything here deliberately uses finite differences so it
//! stays independent of the analytic formulas it validates.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::metric::{christoffel_at, connection_form, frame_at};
use crate::symspace::{SymPoint, TangentVec};

use std::f64::consts::{PI, TAU};

/// Coordinate directions used for derivatives; the z direction is inert
/// (the embedding ignores it).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coord {
    R,
    Phi,
}

/// Scale-aware central-difference step.
fn fd_step(r: f64) -> f64 {
    1e-6 * r.max(1.0)
}

/// The orthonormal frame pushed forward onto the embedded cone, plus the
/// unit normal E1 x E2.
#[derive(Debug, Clone)]
pub struct EmbeddedFrame {
    pub e1: [f64; 3],
    pub e2: [f64; 3],
    pub nu: [f64; 3],
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Embedded frame as a function of the polar coordinates (r, phi).
pub fn embedded_frame(r: f64, phi: f64) -> Result<EmbeddedFrame> {
    if r <= 0.0 {
        return Err(GeomError::SingularPoint);
    }
    let p = SymPoint::from_cylindrical(r, phi, 0.0);
    let f = frame_at(&p)?;
    let (c, s) = (phi.cos(), phi.sin());
    let sqrt3 = 3.0f64.sqrt();
    let push = |e: [f64; 3]| [e[0], e[1], sqrt3 * (c * e[0] + s * e[1])];
    let e1 = push(f.e1);
    let e2 = push(f.e2);
    Ok(EmbeddedFrame {
        e1,
        e2,
        nu: cross(e1, e2),
    })
}

fn frame_component_at(r: f64, phi: f64, which: usize) -> [f64; 3] {
    let f = embedded_frame(r, phi).expect("off-apex evaluation");
    match which {
        1 => f.e1,
        2 => f.e2,
        _ => f.nu,
    }
}

/// Central difference of an embedded field along a polar coordinate.
fn fd_field(r: f64, phi: f64, which: usize, along: Coord) -> [f64; 3] {
    let h = fd_step(r);
    let (plus, minus) = match along {
        Coord::R => (
            frame_component_at(r + h, phi, which),
            frame_component_at(r - h, phi, which),
        ),
        Coord::Phi => (
            frame_component_at(r, phi + h, which),
            frame_component_at(r, phi - h, which),
        ),
    };
    [
        (plus[0] - minus[0]) / (2.0 * h),
        (plus[1] - minus[1]) / (2.0 * h),
        (plus[2] - minus[2]) / (2.0 * h),
    ]
}

/// Extrinsic connection component omega_i = <E1, d_i E2> by central finite
/// differences on the embedded cone.
pub fn extrinsic_connection(p: &SymPoint, i: Coord) -> Result<f64> {
    let phi = p.phi().ok_or(GeomError::SingularPoint)?;
    let f = embedded_frame(p.r(), phi)?;
    Ok(dot(f.e1, fd_field(p.r(), phi, 2, i)))
}

/// Intrinsic connection component omega_i = g(e1, nabla_i e2) from the
/// Christoffel table and finite differences of the frame's cylindrical
/// components; no reference to the embedding.
pub fn intrinsic_connection(p: &SymPoint, i: Coord) -> Result<f64> {
    let phi = p.phi().ok_or(GeomError::SingularPoint)?;
    let r = p.r();
    let ch = christoffel_at(p)?;
    // Cylindrical components of the frame fields.
    let e1_cyl = |r: f64, phi: f64| [phi.cos() / 2.0, -phi.sin() / r, 0.0];
    let e2_cyl = |r: f64, phi: f64| [phi.sin() / 2.0, phi.cos() / r, 0.0];

    let h = fd_step(r);
    let (e2_plus, e2_minus) = match i {
        Coord::R => (e2_cyl(r + h, phi), e2_cyl(r - h, phi)),
        Coord::Phi => (e2_cyl(r, phi + h), e2_cyl(r, phi - h)),
    };
    let idx = match i {
        Coord::R => 0,
        Coord::Phi => 1,
    };
    let e2 = e2_cyl(r, phi);
    let mut nabla = [0.0; 3];
    for k in 0..3 {
        let mut v = (e2_plus[k] - e2_minus[k]) / (2.0 * h);
        for (l, &e2_l) in e2.iter().enumerate() {
            v += ch.gamma(k, idx, l) * e2_l;
        }
        nabla[k] = v;
    }
    let e1 = e1_cyl(r, phi);
    let g_pol = [4.0, r * r, 1.0];
    Ok((0..3).map(|k| g_pol[k] * e1[k] * nabla[k]).sum())
}

/// Hermitian log-derivative <n, d_i n> of the complexified frame
/// n = (E1 + i E2)/sqrt(2); its imaginary part is the connection form and
/// its real part vanishes for a unit field.
pub fn complexified_log_derivative(p: &SymPoint, i: Coord) -> Result<Complex64> {
    let phi = p.phi().ok_or(GeomError::SingularPoint)?;
    let f = embedded_frame(p.r(), phi)?;
    let de1 = fd_field(p.r(), phi, 1, i);
    let de2 = fd_field(p.r(), phi, 2, i);
    let inv_sqrt2 = Complex64::new(0.5f64.sqrt(), 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..3 {
        let n_k = inv_sqrt2 * Complex64::new(f.e1[k], f.e2[k]);
        let dn_k = inv_sqrt2 * Complex64::new(de1[k], de2[k]);
        acc += n_k.conj() * dn_k;
    }
    Ok(acc)
}

/// Connection component from the complexified frame: Im <n, d_i n>.
pub fn complexified_connection(p: &SymPoint, i: Coord) -> Result<f64> {
    Ok(complexified_log_derivative(p, i)?.im)
}

/// Second fundamental form of the embedded cone in the frame directions:
/// II_ab = -<D_{e_a} nu, E_b>, by finite differences of the normal.
pub fn second_fundamental_form(p: &SymPoint) -> Result<[[f64; 2]; 2]> {
    let phi = p.phi().ok_or(GeomError::SingularPoint)?;
    let r = p.r();
    let f = embedded_frame(r, phi)?;
    let dnu_r = fd_field(r, phi, 3, Coord::R);
    let dnu_phi = fd_field(r, phi, 3, Coord::Phi);
    // Cylindrical components of e1, e2 give the directional derivatives.
    let (c, s) = (phi.cos(), phi.sin());
    let e_cyl = [[c / 2.0, -s / r], [s / 2.0, c / r]];
    let frame_vecs = [f.e1, f.e2];
    let mut ii = [[0.0; 2]; 2];
    for a in 0..2 {
        let d_nu = [
            e_cyl[a][0] * dnu_r[0] + e_cyl[a][1] * dnu_phi[0],
            e_cyl[a][0] * dnu_r[1] + e_cyl[a][1] * dnu_phi[1],
            e_cyl[a][0] * dnu_r[2] + e_cyl[a][1] * dnu_phi[2],
        ];
        for b in 0..2 {
            ii[a][b] = -dot(d_nu, frame_vecs[b]);
        }
    }
    Ok(ii)
}

/// Mixed second fundamental form II(partial_i, E_b) = -<d_i nu, E_b>.
fn second_fundamental_mixed(p: &SymPoint, i: Coord, b: usize) -> f64 {
    let phi = p.phi().expect("nonsingular");
    let f = embedded_frame(p.r(), phi).expect("nonsingular");
    let dnu = fd_field(p.r(), phi, 3, i);
    let e_b = if b == 0 { f.e1 } else { f.e2 };
    -dot(dnu, e_b)
}

/// Integral of the connection form around the circle of the given radius
/// about the singular line, by periodic trapezoid quadrature with 1e4 nodes.
/// Equals pi at every radius: the curvature is concentrated on the line.
pub fn curvature_stokes(radius: f64, z: f64) -> f64 {
    let n = 10_000;
    let mut acc = 0.0;
    for k in 0..n {
        let t = TAU * k as f64 / n as f64;
        let p = SymPoint::from_cylindrical(radius, t, z);
        let velocity = [-radius * t.sin(), radius * t.cos(), 0.0];
        let x = TangentVec::from_coordinate_components(p, velocity)
            .expect("circle stays off the singular line");
        acc += connection_form(&p, &x).expect("nonsingular");
    }
    acc * TAU / n as f64
}

/// One named check of the cross-validation suite.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub all_pass: bool,
}

fn check(name: &str, max_deviation: f64, tolerance: f64) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        max_deviation,
        tolerance,
        pass: max_deviation < tolerance,
    }
}

fn random_point(rng: &mut ChaCha8Rng, log_r_range: (f64, f64)) -> SymPoint {
    let r = 10f64.powf(rng.gen_range(log_r_range.0..log_r_range.1));
    let phi = rng.gen_range(-PI..PI);
    let z = rng.gen_range(-5.0..5.0);
    SymPoint::from_cylindrical(r, phi, z)
}

/// Run the full cross-validation suite with a seeded sample of points.
pub fn run_verification(seed: u64) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    // Frame orthonormality over a wide radius range.
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let p = random_point(&mut rng, (-3.0, 3.0));
        let f = frame_at(&p).unwrap();
        let vecs = [f.e1, f.e2, f.e3];
        for i in 0..3 {
            for j in 0..3 {
                let vi = TangentVec::from_coordinate_components(p, vecs[i]).unwrap();
                let vj = TangentVec::from_coordinate_components(p, vecs[j]).unwrap();
                let g = crate::metric::inner(&p, &vi, &vj).unwrap();
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - expect).abs());
            }
        }
    }
    checks.push(check("frame orthonormality", worst, 1e-10));

    // Analytic connection values.
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let p = random_point(&mut rng, (-3.0, 3.0));
        let dphi = TangentVec::from_cylindrical_components(p, [0.0, 1.0, 0.0]).unwrap();
        let dr = TangentVec::from_cylindrical_components(p, [1.0, 0.0, 0.0]).unwrap();
        let dz = TangentVec::from_cylindrical_components(p, [0.0, 0.0, 1.0]).unwrap();
        worst = worst.max((connection_form(&p, &dphi).unwrap() - 0.5).abs());
        worst = worst.max(connection_form(&p, &dr).unwrap().abs());
        worst = worst.max(connection_form(&p, &dz).unwrap().abs());
    }
    checks.push(check("omega(d_phi)=1/2, omega(d_r)=omega(d_z)=0", worst, 1e-12));

    // Three formulations of the connection agree pairwise, and the
    // intrinsic one agrees with the analytic form.
    let mut worst_ei = 0.0f64;
    let mut worst_ec = 0.0f64;
    let mut worst_ic = 0.0f64;
    let mut worst_real = 0.0f64;
    let mut worst_analytic = 0.0f64;
    for _ in 0..1000 {
        let p = random_point(&mut rng, (-2.0, 2.0));
        for i in [Coord::R, Coord::Phi] {
            let ext = extrinsic_connection(&p, i).unwrap();
            let intr = intrinsic_connection(&p, i).unwrap();
            let herm = complexified_log_derivative(&p, i).unwrap();
            worst_ei = worst_ei.max((ext - intr).abs());
            worst_ec = worst_ec.max((ext - herm.im).abs());
            worst_ic = worst_ic.max((intr - herm.im).abs());
            worst_real = worst_real.max(herm.re.abs());
            let coord = match i {
                Coord::R => [1.0, 0.0, 0.0],
                Coord::Phi => [0.0, 1.0, 0.0],
            };
            let x = TangentVec::from_cylindrical_components(p, coord).unwrap();
            worst_analytic = worst_analytic.max((connection_form(&p, &x).unwrap() - ext).abs());
        }
    }
    checks.push(check("extrinsic vs intrinsic connection", worst_ei, 1e-5));
    checks.push(check("extrinsic vs complexified connection", worst_ec, 1e-5));
    checks.push(check("intrinsic vs complexified connection", worst_ic, 1e-5));
    checks.push(check("complexified real part vanishes", worst_real, 1e-5));
    checks.push(check("finite differences vs analytic omega", worst_analytic, 1e-5));

    // Second fundamental form: symmetric, determinant ~ 0 (flat cone), and
    // the curvature integrand identity from the embedded picture.
    let mut worst_sym = 0.0f64;
    let mut worst_det = 0.0f64;
    let mut worst_gauss = 0.0f64;
    let mut worst_identity = 0.0f64;
    for _ in 0..300 {
        let p = random_point(&mut rng, (-1.0, 1.0));
        let ii = second_fundamental_form(&p).unwrap();
        worst_sym = worst_sym.max((ii[0][1] - ii[1][0]).abs());
        let det = ii[0][0] * ii[1][1] - ii[0][1] * ii[1][0];
        worst_det = worst_det.max(det.abs());

        // d(omega)_{r phi} by differentiating the extrinsic components.
        let h = 1e-4 * p.r().max(1.0);
        let phi = p.phi().unwrap();
        let at = |r: f64, ph: f64, i: Coord| {
            extrinsic_connection(&SymPoint::from_cylindrical(r, ph, 0.0), i).unwrap()
        };
        let domega = (at(p.r() + h, phi, Coord::Phi) - at(p.r() - h, phi, Coord::Phi)) / (2.0 * h)
            - (at(p.r(), phi + h, Coord::R) - at(p.r(), phi - h, Coord::R)) / (2.0 * h);
        worst_gauss = worst_gauss.max((domega - det).abs());

        // <d_i E1, d_j E2> - <d_j E1, d_i E2> equals the II products.
        let d_r_e1 = fd_field(p.r(), phi, 1, Coord::R);
        let d_phi_e1 = fd_field(p.r(), phi, 1, Coord::Phi);
        let d_r_e2 = fd_field(p.r(), phi, 2, Coord::R);
        let d_phi_e2 = fd_field(p.r(), phi, 2, Coord::Phi);
        let lhs = dot(d_r_e1, d_phi_e2) - dot(d_phi_e1, d_r_e2);
        let rhs = second_fundamental_mixed(&p, Coord::R, 0)
            * second_fundamental_mixed(&p, Coord::Phi, 1)
            - second_fundamental_mixed(&p, Coord::Phi, 0)
                * second_fundamental_mixed(&p, Coord::R, 1);
        worst_identity = worst_identity.max((lhs - rhs).abs());
    }
    checks.push(check("II symmetry", worst_sym, 1e-5));
    checks.push(check("det II ~ 0 off the apex", worst_det, 1e-4));
    checks.push(check("d(omega) matches det II (both ~ 0)", worst_gauss, 1e-4));
    checks.push(check("curvature integrand identity", worst_identity, 1e-4));

    // Mean curvature of the cone at r = 1 is sqrt(3)/2 in magnitude.
    let ii = second_fundamental_form(&SymPoint::from_cylindrical(1.0, 0.7, 0.0)).unwrap();
    let trace = ii[0][0] + ii[1][1];
    checks.push(check(
        "trace II at r=1 is sqrt(3)/2",
        (trace.abs() - 3.0f64.sqrt() / 2.0).abs(),
        1e-4,
    ));

    // Stokes integral of the connection form around the singular line.
    let mut worst = 0.0f64;
    for (radius, z) in [(1e-3, 0.0), (1.0, 0.0), (10.0, 7.0)] {
        worst = worst.max((curvature_stokes(radius, z) - PI).abs());
    }
    checks.push(check("Stokes integral = pi at all radii", worst, 1e-10));

    let all_pass = checks.iter().all(|c| c.pass);
    VerifyReport {
        seed,
        checks,
        all_pass,
    }
}

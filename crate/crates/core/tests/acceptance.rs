//! Acceptance suite: one test per shipping criterion, each printing a
//! PASS/FAIL line with the measured deviation and runtime.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::f64::consts::{PI, TAU};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symcone::bench::run_bench;
use symcone::covering::{cover_metric_at, cover_phase, deck, lift_curve, CoverPoint};
use symcone::curve::{CurveSpec, MatrixCurve};
use symcone::eigen::{angle_mod_sign, eigen_closed_form, eigen_numeric, eigen_residual};
use symcone::mass_spring::{
    hessian, hessian_fd, metric_kernel, pullback_fixed_closed_form, pullback_metric, Boundary,
    SpringSystem,
};
use symcone::metric::{connection_form, inner};
use symcone::symspace::{wrap_angle, SymPoint, TangentVec};
use symcone::transport::{
    eigenvector_continuation, geometric_phase, half_disc_loop, holonomy_group, winding_number,
    IntegratorOptions,
};
use symcone::verify::{
    complexified_connection, curvature_stokes, extrinsic_connection, intrinsic_connection,
    second_fundamental_form, Coord,
};

struct Criterion {
    name: &'static str,
    started: Instant,
}

impl Criterion {
    fn start(name: &'static str) -> Self {
        Criterion {
            name,
            started: Instant::now(),
        }
    }

    fn finish(self, max_dev: f64, tol: f64) {
        let elapsed = self.started.elapsed().as_secs_f64();
        let pass = max_dev < tol;
        println!(
            "{} criterion {}: max deviation {:.3e} (tolerance {:.0e}, {:.3}s)",
            if pass { "PASS" } else { "FAIL" },
            self.name,
            max_dev,
            tol,
            elapsed
        );
        assert!(
            pass,
            "criterion '{}' deviates by {max_dev:.3e} (tolerance {tol:.0e})",
            self.name
        );
    }
}

fn random_point(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> SymPoint {
    let r = 10f64.powf(rng.gen_range(lo..hi));
    SymPoint::from_cylindrical(r, rng.gen_range(-PI..PI), rng.gen_range(-5.0..5.0))
}

/// A smooth random curve with r bounded below, 1000 samples, gentle angle
/// steps. Deterministic given the rng state.
fn random_smooth_curve(rng: &mut ChaCha8Rng, n: usize) -> MatrixCurve {
    let r0 = rng.gen_range(0.6..1.5);
    let a1 = rng.gen_range(-0.2..0.2);
    let a2 = rng.gen_range(-0.2..0.2);
    let p1 = rng.gen_range(0.0..TAU);
    let p2 = rng.gen_range(0.0..TAU);
    let phi0 = rng.gen_range(-PI..PI);
    let turns: i32 = rng.gen_range(-2..=2);
    let b1 = rng.gen_range(-1.0..1.0);
    let q1 = rng.gen_range(0.0..TAU);
    let z0 = rng.gen_range(-1.0..1.0);
    let c1 = rng.gen_range(-1.0..1.0);
    let samples: Vec<SymPoint> = (0..n)
        .map(|k| {
            let t = k as f64 / (n - 1) as f64;
            let r = r0 + a1 * (TAU * t + p1).sin() + a2 * (2.0 * TAU * t + p2).sin();
            let phi = phi0 + TAU * turns as f64 * t + b1 * (TAU * t + q1).sin();
            let z = z0 + c1 * (TAU * t).sin();
            SymPoint::from_cylindrical(r, phi, z)
        })
        .collect();
    MatrixCurve::from_samples(samples).expect("smooth curve meets the sampling contract")
}

#[test]
fn criterion_01_metric_values() {
    let c = Criterion::start("1 (metric values)");
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let p = random_point(&mut rng, -3.0, 3.0);
        let dr = TangentVec::from_cylindrical_components(p, [1.0, 0.0, 0.0]).unwrap();
        let dphi = TangentVec::from_cylindrical_components(p, [0.0, 1.0, 0.0]).unwrap();
        let r2 = p.r() * p.r();
        // Deviations are measured relative to the scale of the expected
        // value: |g_phiphi| grows to 1e6 here, where 1e-10 absolute is
        // below representable resolution.
        let d_rr = (inner(&p, &dr, &dr).unwrap() - 4.0).abs() / 4.0f64.max(1.0);
        let d_rphi = inner(&p, &dr, &dphi).unwrap().abs() / r2.max(1.0);
        let d_phiphi = (inner(&p, &dphi, &dphi).unwrap() - r2).abs() / r2.max(1.0);
        worst = worst.max(d_rr).max(d_rphi).max(d_phiphi);
    }
    c.finish(worst, 1e-10);
}

#[test]
fn criterion_02_connection_form() {
    let c = Criterion::start("2 (connection form)");
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut worst_analytic = 0.0f64;
    let mut worst_christoffel = 0.0f64;
    for _ in 0..1000 {
        let p = random_point(&mut rng, -2.0, 2.0);
        let dphi = TangentVec::from_cylindrical_components(p, [0.0, 1.0, 0.0]).unwrap();
        let dr = TangentVec::from_cylindrical_components(p, [1.0, 0.0, 0.0]).unwrap();
        let dz = TangentVec::from_cylindrical_components(p, [0.0, 0.0, 1.0]).unwrap();
        worst_analytic = worst_analytic
            .max((connection_form(&p, &dphi).unwrap() - 0.5).abs())
            .max(connection_form(&p, &dr).unwrap().abs())
            .max(connection_form(&p, &dz).unwrap().abs());
        worst_christoffel = worst_christoffel
            .max((intrinsic_connection(&p, Coord::Phi).unwrap() - 0.5).abs())
            .max(intrinsic_connection(&p, Coord::R).unwrap().abs());
    }
    assert!(
        worst_christoffel < 1e-5,
        "Christoffel-based recomputation deviates by {worst_christoffel:.3e}"
    );
    c.finish(worst_analytic, 1e-12);
}

#[test]
fn criterion_03_stokes_curvature() {
    let c = Criterion::start("3 (Stokes curvature)");
    let mut worst = 0.0f64;
    for radius in [1e-3, 1.0, 10.0] {
        worst = worst.max((curvature_stokes(radius, 0.0) - PI).abs());
    }
    c.finish(worst, 1e-10);
}

#[test]
fn criterion_04_transport_oracle_equivalence() {
    let c = Criterion::start("4 (transport-oracle equivalence)");
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mut worst_angle = 0.0f64;
    let mut worst_residual = 0.0f64;
    for _ in 0..100 {
        let curve = random_smooth_curve(&mut rng, 1000);
        let res =
            eigenvector_continuation(&curve, 1, IntegratorOptions { steps_per_sample: 4 })
                .unwrap();
        for (v, p) in res.vectors.iter().zip(curve.samples()) {
            let f = v.frame_components();
            let norm = f[0].hypot(f[1]);
            let dir = [f[0] / norm, f[1] / norm];
            worst_angle = worst_angle.max(angle_mod_sign(dir, eigen_numeric(p).v1));
            worst_residual = worst_residual.max(eigen_residual(p, dir));
        }
    }
    assert!(
        worst_residual < 1e-8,
        "eigen residual {worst_residual:.3e} exceeds 1e-8"
    );
    c.finish(worst_angle, 1e-6);
}

#[test]
fn criterion_05_phase_quantization() {
    let c = Criterion::start("5 (geometric phase quantization)");
    let circle = MatrixCurve::circle(0.0, 1.0, 0.0, TAU, 721).unwrap();
    let d_circle = (geometric_phase(&circle).unwrap() - PI).abs();
    assert!(d_circle < 1e-8, "unit circle phase off by {d_circle:.3e}");

    let doubled = circle.repeated(2).unwrap();
    let d_doubled = (geometric_phase(&doubled).unwrap() - TAU).abs();
    assert!(d_doubled < 1e-8, "doubled loop phase off by {d_doubled:.3e}");

    let half = half_disc_loop();
    assert!((winding_number(&half).unwrap() - 0.5).abs() < 1e-9);
    let d_half = (geometric_phase(&half).unwrap() - PI / 2.0).abs();
    c.finish(d_circle.max(d_doubled).max(d_half), 1e-6);
}

#[test]
fn criterion_06_holonomy_enumeration() {
    let c = Criterion::start("6 (holonomy enumeration)");
    let z2 = holonomy_group(false);
    let z4 = holonomy_group(true);
    let mut worst = 0.0f64;
    assert_eq!(z2.len(), 2, "Hol without crossings must have 2 classes");
    for (got, expect) in z2.iter().zip([0.0, PI]) {
        worst = worst.max((got - expect).abs());
    }
    assert_eq!(z4.len(), 4, "Hol with crossings must have 4 classes");
    for (got, expect) in z4.iter().zip([0.0, PI / 2.0, PI, 1.5 * PI]) {
        worst = worst.max((got - expect).abs());
    }
    c.finish(worst, 1e-8);
}

#[test]
fn criterion_07_covering_space() {
    let c = Criterion::start("7 (covering space)");
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let mut worst = 0.0f64;

    for _ in 0..100 {
        let rbar = 10f64.powf(rng.gen_range(-2.0..2.0));
        let q = CoverPoint {
            rbar,
            phibar: rng.gen_range(-PI..PI),
            z: rng.gen_range(-2.0..2.0),
            depth: 1,
        };
        let h = cover_metric_at(&q).unwrap();
        worst = worst
            .max((h[0][0] - 4.0).abs())
            .max(h[0][1].abs())
            .max((h[1][1] - 4.0 * rbar * rbar).abs() / (4.0 * rbar * rbar).max(1.0));
    }

    // Odd winding: open lift, endpoints differ by the deck transformation.
    let circle = MatrixCurve::circle(0.0, 1.0, 0.0, TAU, 721).unwrap();
    let lift = lift_curve(&circle, 1, 1).unwrap();
    assert!(!lift.closed(), "winding-1 loop must lift open");
    let first = lift.points().first().unwrap();
    let last = lift.points().last().unwrap();
    worst = worst.max(wrap_angle(last.phibar - deck(first).phibar).abs());
    worst = worst.max((last.rbar - first.rbar).abs());

    // Lifted phase is 2 pi W of the lifted loop.
    let doubled = circle.repeated(2).unwrap();
    let lift2 = lift_curve(&doubled, 1, 1).unwrap();
    assert!(lift2.closed());
    let w_up = lift2.winding().unwrap();
    worst = worst.max((cover_phase(&lift2).unwrap() - TAU * w_up).abs());

    // Downstairs Z2 holonomy trivializes upstairs: the lifted phase of the
    // (doubled) winding-1 generator is 0 mod 2 pi.
    worst = worst.max(wrap_angle(cover_phase(&lift2).unwrap()).abs());
    c.finish(worst, 1e-12);
}

#[test]
fn criterion_08_mass_spring() {
    let c = Criterion::start("8 (mass-spring pullbacks)");
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let mut worst_const = 0.0f64;
    let mut worst_fixed = 0.0f64;
    let mut worst_hessian = 0.0f64;

    for _ in 0..100 {
        let kappa = rng.gen_range(0.05..10.0);
        let g = pullback_metric(Boundary::Open, &[kappa]).unwrap();
        worst_const = worst_const.max((g[(0, 0)] - 5.0).abs());

        let kap = [rng.gen_range(0.05..10.0), rng.gen_range(0.05..10.0)];
        let g = pullback_metric(Boundary::Periodic, &kap).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                worst_const = worst_const.max((g[(i, j)] - 5.0).abs());
            }
        }

        let kf = [
            rng.gen_range(-3.0..3.0),
            rng.gen_range(0.2..3.0),
            rng.gen_range(-3.0..3.0),
        ];
        let numeric = pullback_metric(Boundary::Fixed, &kf).unwrap();
        let s = SpringSystem::new(Boundary::Fixed, kf.to_vec(), 1.0).unwrap();
        let cf = pullback_fixed_closed_form(&hessian(&s)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                worst_fixed = worst_fixed.max((numeric[(i, j)] - cf[i][j]).abs());
            }
        }

        for boundary in [Boundary::Fixed, Boundary::Open, Boundary::Periodic] {
            let kappas: Vec<f64> = (0..boundary.param_dim())
                .map(|_| rng.gen_range(-4.0..4.0))
                .collect();
            let sys = SpringSystem::new(boundary, kappas.clone(), 1.0).unwrap();
            let cf = hessian(&sys).matrix();
            let fd = hessian_fd(&sys);
            let scale = kappas.iter().fold(1.0f64, |m, k| m.max(k.abs()));
            for i in 0..2 {
                for j in 0..2 {
                    worst_hessian = worst_hessian.max((cf[i][j] - fd[i][j]).abs() / scale);
                }
            }
        }
    }

    let kernel = metric_kernel(&pullback_metric(Boundary::Periodic, &[1.0, 2.0]).unwrap(), 1e-10);
    assert_eq!(kernel.len(), 1, "periodic kernel must be one-dimensional");
    let v = &kernel[0];
    assert!(
        (v[0] + v[1]).abs() < 1e-12 && (v[0].abs() - 0.5f64.sqrt()).abs() < 1e-12,
        "periodic kernel is not span((1,-1)): ({}, {})",
        v[0],
        v[1]
    );

    assert!(worst_fixed < 1e-10, "fixed closed form deviates {worst_fixed:.3e}");
    assert!(worst_hessian < 1e-6, "Hessian FD deviates {worst_hessian:.3e}");
    c.finish(worst_const, 1e-12);
}

#[test]
fn criterion_09_connection_formulations() {
    let c = Criterion::start("9 (extrinsic/intrinsic/complexified)");
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let mut worst_pairwise = 0.0f64;
    for _ in 0..1000 {
        let p = random_point(&mut rng, -2.0, 2.0);
        for i in [Coord::R, Coord::Phi] {
            let ext = extrinsic_connection(&p, i).unwrap();
            let int = intrinsic_connection(&p, i).unwrap();
            let cpl = complexified_connection(&p, i).unwrap();
            worst_pairwise = worst_pairwise
                .max((ext - int).abs())
                .max((ext - cpl).abs())
                .max((int - cpl).abs());
        }
    }
    let mut worst_curvature = 0.0f64;
    for _ in 0..100 {
        let p = random_point(&mut rng, -1.0, 1.0);
        let ii = second_fundamental_form(&p).unwrap();
        let det = ii[0][0] * ii[1][1] - ii[0][1] * ii[1][0];
        worst_curvature = worst_curvature.max(det.abs());
    }
    assert!(
        worst_curvature < 1e-4,
        "det II off the apex deviates {worst_curvature:.3e}"
    );
    c.finish(worst_pairwise, 1e-5);
}

#[test]
fn criterion_10_eigenvalue_closed_form() {
    let c = Criterion::start("10 (eigenvalues z +- r)");
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let p = SymPoint::new(
            rng.gen_range(-10.0..10.0),
            rng.gen_range(-10.0..10.0),
            rng.gen_range(-10.0..10.0),
        );
        if p.r() < 1e-12 {
            continue;
        }
        let cf = eigen_closed_form(&p, p.phi().unwrap()).unwrap();
        let num = eigen_numeric(&p);
        let scale1 = cf.lambda1.abs().max(1.0);
        let scale2 = cf.lambda2.abs().max(1.0);
        worst = worst
            .max((cf.lambda1 - num.lambda1).abs() / scale1)
            .max((cf.lambda2 - num.lambda2).abs() / scale2);
    }
    c.finish(worst, 1e-12);
}

#[test]
fn criterion_11_rk4_convergence() {
    let c = Criterion::start("11 (RK4 convergence order)");
    let curve = MatrixCurve::circle(0.0, 1.0, 0.0, TAU, 33).unwrap();
    let exact = geometric_phase(&curve).unwrap();
    let v0 = TangentVec::from_frame_components(curve.samples()[0], [1.0, 0.0, 0.0]);
    let mut prev_err = f64::INFINITY;
    let mut worst_ratio_violation = 0.0f64;
    for k in [1usize, 2, 4, 8, 16] {
        let res = symcone::transport::parallel_transport(
            &curve,
            &v0,
            IntegratorOptions { steps_per_sample: k },
        )
        .unwrap();
        let err = (res.phase - exact).abs();
        if prev_err.is_finite() && err > 1e-12 {
            let ratio = prev_err / err;
            println!("  substeps {k}: phase error {err:.3e} (reduction {ratio:.1}x)");
            if ratio < 8.0 {
                worst_ratio_violation = worst_ratio_violation.max(8.0 - ratio);
            }
        } else {
            println!("  substeps {k}: phase error {err:.3e}");
        }
        prev_err = err;
    }
    c.finish(worst_ratio_violation, 1e-12);
}

#[test]
fn criterion_12_bench_pipelines_agree() {
    let c = Criterion::start("12 (benchmark pipeline agreement)");
    let spec = CurveSpec::Circle {
        center_z: 0.0,
        radius: 1.0,
        phi_start: 0.0,
        phi_end: TAU,
        n: 0,
    };
    let report = run_bench(&spec, 100_000, 4, 3).unwrap();
    println!(
        "  transport {:.4}s vs repeated eig {:.4}s (ratio {:.2}, informational only)",
        report.wall_time_transport, report.wall_time_repeated_eig, report.time_ratio
    );
    c.finish(report.max_angle_error, 1e-6);
}

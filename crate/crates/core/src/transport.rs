//! Parallel transport along matrix curves, geometric phases, winding
//! numbers, singular-line crossings and holonomy.
//!
//! In frame components the transport equation is a plane rotation driven by
//! the connection form: a1' = -omega(gamma') a2, a2' = omega(gamma') a1,
//! a3' = 0, so a parallel vector rotates by theta = int omega measured in
//! the frame. For a field of top eigenvectors this reproduces the half-angle
//! law: the transported components stay equal to
//! (cos(track/2), sin(track/2)) along the unwrapped angle track.
//!
//! # Crossings of the singular line
//!
//! The reference frame is pi-periodic in phi, so it extends continuously
//! through a transversal pass of the singular line; the physically correct
//! continuation keeps the frame components unchanged across the crossing
//! (eigenvalue exchange happens, the vector does not move). Consequently a
//! crossing contributes nothing to the accumulated phase or to the winding
//! number, which is exactly what makes simple loops through the line come
//! out with winding 1/2 and phase pi/2 (the principal-value convention for
//! winding numbers of curves through the origin). Each crossing is still
//! reported as a [`CrossingEvent`] whose `phase_jump` — half the
//! principal-value angle difference across the line, ties at +-pi broken
//! toward + — is the shift of the half-angle eigenvector branch, +-pi/2 for
//! a straight transversal pass and 0 for a tangential touch.

use serde::Serialize;

use crate::curve::MatrixCurve;
use crate::error::{GeomError, Result};
use crate::symspace::{wrap_angle, SymPoint, TangentVec};

use std::f64::consts::{PI, TAU};

/// Fraction of samples allowed inside the crossing threshold before the
/// curve is rejected as lingering on the singular line.
const MAX_SINGULAR_FRACTION: f64 = 0.25;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CrossingEvent {
    /// First sample index of the singular run.
    pub index: usize,
    /// Principal angle of the last nonsingular sample before the run.
    pub phi_in: f64,
    /// Principal angle of the first nonsingular sample after the run.
    pub phi_out: f64,
    /// Half the principal-value angular difference, wrap(phi_out - phi_in)/2;
    /// the eigenvector-branch shift across the line.
    pub phase_jump: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct IntegratorOptions {
    /// RK4 substeps per curve segment.
    pub steps_per_sample: usize,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        IntegratorOptions { steps_per_sample: 4 }
    }
}

#[derive(Debug, Clone)]
pub struct TransportResult {
    /// Transported vector at every curve sample.
    pub vectors: Vec<TangentVec>,
    /// Accumulated geometric phase at every sample.
    pub phases: Vec<f64>,
    /// Final accumulated phase.
    pub phase: f64,
    pub crossings: Vec<CrossingEvent>,
}

/// Find maximal runs of samples with r < eps and pair each with the angles
/// on both sides. Closed curves are scanned cyclically, so a run sitting on
/// the start/end seam is a single crossing; for open curves a run touching
/// either endpoint has no incoming or outgoing direction and is an error.
pub fn detect_crossings(c: &MatrixCurve, eps: f64) -> Result<Vec<CrossingEvent>> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(GeomError::InvalidCurve {
            reason: format!("crossing threshold must be positive, got {eps}"),
        });
    }
    let samples = c.samples();
    // The duplicated final sample of a closed curve would double-count a
    // seam run; work on the fundamental samples.
    let n_eff = if c.closed() { samples.len() - 1 } else { samples.len() };
    let singular: Vec<bool> = samples[..n_eff].iter().map(|p| p.r() < eps).collect();
    let n_singular = singular.iter().filter(|&&s| s).count();

    if n_singular == 0 {
        return Ok(Vec::new());
    }
    if n_singular == n_eff {
        return Err(GeomError::AllSingular);
    }

    // Maximal singular runs as (start index, length).
    let mut runs: Vec<(usize, usize)> = Vec::new();
    if c.closed() {
        // Rotate so the scan begins on a nonsingular sample; runs then never
        // straddle the scan boundary.
        let anchor = singular.iter().position(|s| !s).unwrap();
        let mut k = 0;
        while k < n_eff {
            if singular[(anchor + k) % n_eff] {
                let start = k;
                while k < n_eff && singular[(anchor + k) % n_eff] {
                    k += 1;
                }
                runs.push(((anchor + start) % n_eff, k - start));
            } else {
                k += 1;
            }
        }
    } else {
        let mut k = 0;
        while k < n_eff {
            if singular[k] {
                let start = k;
                while k < n_eff && singular[k] {
                    k += 1;
                }
                if start == 0 || k == n_eff {
                    return Err(GeomError::CurveEndsOnL);
                }
                runs.push((start, k - start));
            } else {
                k += 1;
            }
        }
    }

    if (n_singular as f64) > MAX_SINGULAR_FRACTION * (n_eff as f64) {
        return Err(GeomError::DegenerateCurve);
    }

    let mut events: Vec<CrossingEvent> = runs
        .iter()
        .map(|&(start, len)| {
            let before = (start + n_eff - 1) % n_eff;
            let after = (start + len) % n_eff;
            let phi_in = samples[before].phi().expect("nonsingular sample");
            let phi_out = samples[after].phi().expect("nonsingular sample");
            CrossingEvent {
                index: start,
                phi_in,
                phi_out,
                phase_jump: wrap_angle(phi_out - phi_in) / 2.0,
            }
        })
        .collect();
    events.sort_by_key(|e| e.index);
    Ok(events)
}

/// Connection form evaluated on the velocity of the straight segment
/// p -> q at fraction t: omega(gamma'(t)) = (x y' - y x') / (2 r^2).
fn omega_on_segment(p: &SymPoint, q: &SymPoint, t: f64) -> f64 {
    let dx = q.x() - p.x();
    let dy = q.y() - p.y();
    let x = p.x() + t * dx;
    let y = p.y() + t * dy;
    (x * dy - y * dx) / (2.0 * (x * x + y * y))
}

/// One RK4 step of the state (a1, a2, theta) with rotation rate omega(t).
fn rk4_step<F: Fn(f64) -> f64>(state: [f64; 3], t: f64, h: f64, omega: F) -> [f64; 3] {
    let deriv = |s: &[f64; 3], w: f64| [-w * s[1], w * s[0], w];
    let w1 = omega(t);
    let w2 = omega(t + 0.5 * h);
    let w4 = omega(t + h);

    let k1 = deriv(&state, w1);
    let s2 = [
        state[0] + 0.5 * h * k1[0],
        state[1] + 0.5 * h * k1[1],
        state[2] + 0.5 * h * k1[2],
    ];
    let k2 = deriv(&s2, w2);
    let s3 = [
        state[0] + 0.5 * h * k2[0],
        state[1] + 0.5 * h * k2[1],
        state[2] + 0.5 * h * k2[2],
    ];
    let k3 = deriv(&s3, w2);
    let s4 = [
        state[0] + h * k3[0],
        state[1] + h * k3[1],
        state[2] + h * k3[2],
    ];
    let k4 = deriv(&s4, w4);
    [
        state[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        state[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        state[2] + h / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]),
    ]
}

/// Integrate the parallel-transport equation along the curve with fixed-step
/// RK4, `opts.steps_per_sample` substeps per segment. Segments adjacent to a
/// singular run are skipped: the frame is continuous through the line and
/// the components pass through unchanged.
pub fn parallel_transport(
    c: &MatrixCurve,
    v0: &TangentVec,
    opts: IntegratorOptions,
) -> Result<TransportResult> {
    let samples = c.samples();
    if c.is_sample_singular(0) {
        return Err(GeomError::SingularStart);
    }
    if !v0.base().same_point(&samples[0]) {
        return Err(GeomError::BaseMismatch);
    }
    let crossings = if c.has_singular_samples() {
        detect_crossings(c, c.crossing_eps())?
    } else {
        Vec::new()
    };
    let substeps = opts.steps_per_sample.max(1);

    let mut frame = v0.frame_components();
    let mut theta = 0.0;
    let mut vectors = Vec::with_capacity(samples.len());
    let mut phases = Vec::with_capacity(samples.len());
    vectors.push(*v0);
    phases.push(0.0);

    for k in 0..samples.len() - 1 {
        let (p, q) = (&samples[k], &samples[k + 1]);
        if !c.is_sample_singular(k) && !c.is_sample_singular(k + 1) {
            let h = 1.0 / substeps as f64;
            let mut state = [frame[0], frame[1], theta];
            for step in 0..substeps {
                state = rk4_step(state, step as f64 * h, h, |t| omega_on_segment(p, q, t));
            }
            frame = [state[0], state[1], frame[2]];
            theta = state[2];
        }
        vectors.push(TangentVec::from_frame_components(*q, frame));
        phases.push(theta);
    }

    Ok(TransportResult {
        vectors,
        phase: theta,
        phases,
        crossings,
    })
}

/// Geometric phase theta = int omega along the curve: half the smooth
/// unwrapped angle sweep. Exact (no quadrature) because omega = d(phi)/2 is
/// exact away from the singular line, and a transversal crossing contributes
/// zero under the principal-value convention.
pub fn geometric_phase(c: &MatrixCurve) -> Result<f64> {
    if c.has_singular_samples() {
        detect_crossings(c, c.crossing_eps())?;
    }
    Ok(0.5 * c.smooth_sweep())
}

/// Winding number around the singular line, theta / pi (closed curves only):
/// an integer off the line, a half-integer for loops crossing it
/// transversally.
pub fn winding_number(c: &MatrixCurve) -> Result<f64> {
    if !c.closed() {
        return Err(GeomError::NotClosed);
    }
    Ok(geometric_phase(c)? / PI)
}

/// Start from the closed-form top eigenvector at the first sample (sign per
/// `sign_hint`) and parallel-transport it along the curve. Every output
/// vector is an eigenvector of the sample matrix; across a singular-line
/// crossing the tracked eigenvalue exchanges between z + r and z - r.
pub fn eigenvector_continuation(
    c: &MatrixCurve,
    sign_hint: i8,
    opts: IntegratorOptions,
) -> Result<TransportResult> {
    if c.is_sample_singular(0) {
        return Err(GeomError::SingularStart);
    }
    let start = &c.samples()[0];
    let branch = c.unwrapped_phi()[0];
    let pair = crate::eigen::eigen_closed_form(start, branch)?;
    let s = if sign_hint < 0 { -1.0 } else { 1.0 };
    let v0 = TangentVec::from_frame_components(*start, [s * pair.v1[0], s * pair.v1[1], 0.0]);
    parallel_transport(c, &v0, opts)
}

/// Phases realized by parallel transport around closed loops, computed
/// constructively from generator loops and closed under addition mod 2*pi.
///
/// Without singular-line crossings the generator is a simple loop of winding
/// 1 (phase pi); allowing crossings adds a simple loop of winding 1/2
/// (phase pi/2). The results are {0, pi} and {0, pi/2, pi, 3pi/2}.
pub fn holonomy_group(include_l_crossings: bool) -> Vec<f64> {
    let mut generators = Vec::new();

    let circle = MatrixCurve::circle(0.0, 1.0, 0.0, TAU, 721).expect("valid generator loop");
    generators.push(geometric_phase(&circle).expect("generator phase"));

    if include_l_crossings {
        generators.push(geometric_phase(&half_disc_loop()).expect("generator phase"));
    }

    close_under_addition(&generators, 1e-9)
}

/// A simple closed loop of winding 1/2: half circle plus the diameter
/// through the singular line.
pub fn half_disc_loop() -> MatrixCurve {
    let arc = MatrixCurve::circle(0.0, 1.0, 0.0, PI, 361).expect("arc");
    let diameter = MatrixCurve::segment(
        SymPoint::new(-1.0, 0.0, 0.0),
        SymPoint::new(1.0, 0.0, 0.0),
        129,
    )
    .expect("diameter");
    arc.concat(&diameter).expect("loop closes")
}

fn close_under_addition(generators: &[f64], tol: f64) -> Vec<f64> {
    let norm = |x: f64| x.rem_euclid(TAU);
    let mut classes: Vec<f64> = vec![0.0];
    let mut frontier: Vec<f64> = generators.iter().map(|&g| norm(g)).collect();
    // The holonomy classes of this metric are finite subgroups of the
    // circle; cap the closure to guard against drift.
    while let Some(g) = frontier.pop() {
        if classes.len() > 64 {
            break;
        }
        let mut new_elems = Vec::new();
        for &c in &classes {
            let s = norm(c + g);
            let known = classes
                .iter()
                .chain(new_elems.iter())
                .any(|&k| (k - s).abs() < tol || (TAU - (k - s).abs()) < tol);
            if !known {
                new_elems.push(s);
            }
        }
        if !new_elems.is_empty() {
            classes.extend_from_slice(&new_elems);
            frontier.push(g);
            frontier.extend_from_slice(&new_elems);
        }
    }
    classes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    classes
}

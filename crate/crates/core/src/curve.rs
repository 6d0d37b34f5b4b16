//! One-parameter families of symmetric matrices: sampled curves, the
//! continuous unwrapped angle track, and the JSON curve-file schema.
//!
//! The angle track is the backbone of every phase computation. It is built
//! by principal-value continuation between consecutive nonsingular samples,
//! so it is the minimal-total-variation branch of phi along the curve.
//! Runs of samples inside the singular threshold are bridged by a single
//! principal-value jump (the crossing rule); those jumps are recorded in the
//! track (they carry the eigenvector branch across the singular line) but
//! are excluded from the smooth sweep used by phases and winding numbers.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::symspace::{wrap_angle, SymPoint};

use std::f64::consts::PI;

/// Relative factor for the default singular threshold: samples with
/// r < 1e-9 * max_r are treated as lying on the singular line.
pub const CROSSING_EPS_FACTOR: f64 = 1e-9;

/// Endpoint coincidence tolerance for closed-curve detection.
pub const CLOSURE_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct MatrixCurve {
    samples: Vec<SymPoint>,
    unwrapped_phi: Vec<f64>,
    singular: Vec<bool>,
    /// Sum of principal-value angle steps between adjacent nonsingular
    /// samples; excludes the jumps across singular runs.
    smooth_sweep: f64,
    closed: bool,
    eps: f64,
    max_r: f64,
}

/// Build a [`MatrixCurve`] from raw samples, constructing the continuous
/// angle track and enforcing the sampling density contract.
pub fn unwrap_curve(samples: Vec<SymPoint>) -> Result<MatrixCurve> {
    if samples.len() < 2 {
        return Err(GeomError::InvalidCurve {
            reason: format!("need at least 2 samples, got {}", samples.len()),
        });
    }
    let max_r = samples.iter().map(|p| p.r()).fold(0.0, f64::max);
    if max_r == 0.0 {
        return Err(GeomError::AllSingular);
    }
    let eps = CROSSING_EPS_FACTOR * max_r;
    let singular: Vec<bool> = samples.iter().map(|p| p.r() < eps).collect();

    let first_ns = singular
        .iter()
        .position(|s| !s)
        .ok_or(GeomError::AllSingular)?;

    let n = samples.len();
    let mut track = vec![0.0; n];
    let start_phi = samples[first_ns]
        .phi()
        .expect("nonsingular sample has a defined angle");
    for t in track.iter_mut().take(first_ns + 1) {
        *t = start_phi;
    }

    let mut smooth_sweep = 0.0;
    let mut prev_ns = first_ns;
    for k in first_ns + 1..n {
        if singular[k] {
            track[k] = track[prev_ns];
            continue;
        }
        let phi_k = samples[k].phi().unwrap();
        let d = wrap_angle(phi_k - samples[prev_ns].phi().unwrap());
        if prev_ns == k - 1 {
            // Adjacent nonsingular samples must resolve the angle without
            // aliasing; |d| = pi is exactly the ambiguous case.
            if d.abs() >= PI {
                return Err(GeomError::SamplingTooCoarse { index: k });
            }
            smooth_sweep += d;
        }
        track[k] = track[prev_ns] + d;
        prev_ns = k;
    }

    let closed = samples[0].dist(&samples[n - 1]) <= CLOSURE_TOL;

    Ok(MatrixCurve {
        samples,
        unwrapped_phi: track,
        singular,
        smooth_sweep,
        closed,
        eps,
        max_r,
    })
}

impl MatrixCurve {
    pub fn from_samples(samples: Vec<SymPoint>) -> Result<Self> {
        unwrap_curve(samples)
    }

    /// Arc of the circle r = radius at height z, with `n` samples spread
    /// uniformly over [phi_start, phi_end].
    pub fn circle(center_z: f64, radius: f64, phi_start: f64, phi_end: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(GeomError::InvalidCurve {
                reason: "circle needs n >= 2".into(),
            });
        }
        let samples = (0..n)
            .map(|k| {
                let t = k as f64 / (n - 1) as f64;
                let phi = phi_start + t * (phi_end - phi_start);
                SymPoint::from_cylindrical(radius, phi, center_z)
            })
            .collect();
        unwrap_curve(samples)
    }

    /// Straight segment between two points, `n` samples.
    pub fn segment(from: SymPoint, to: SymPoint, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(GeomError::InvalidCurve {
                reason: "segment needs n >= 2".into(),
            });
        }
        let samples = (0..n)
            .map(|k| {
                let t = k as f64 / (n - 1) as f64;
                SymPoint::new(
                    from.x() + t * (to.x() - from.x()),
                    from.y() + t * (to.y() - from.y()),
                    from.z() + t * (to.z() - from.z()),
                )
            })
            .collect();
        unwrap_curve(samples)
    }

    pub fn samples(&self) -> &[SymPoint] {
        &self.samples
    }

    pub fn unwrapped_phi(&self) -> &[f64] {
        &self.unwrapped_phi
    }

    pub fn is_sample_singular(&self, k: usize) -> bool {
        self.singular[k]
    }

    pub fn has_singular_samples(&self) -> bool {
        self.singular.iter().any(|&s| s)
    }

    /// Total principal-value angle variation over adjacent nonsingular
    /// samples (singular-line crossings excluded).
    pub fn smooth_sweep(&self) -> f64 {
        self.smooth_sweep
    }

    pub fn closed(&self) -> bool {
        self.closed
    }

    /// Singular threshold used when the track was built.
    pub fn crossing_eps(&self) -> f64 {
        self.eps
    }

    pub fn max_r(&self) -> f64 {
        self.max_r
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Normalized curve parameter of sample `k`, in [0, 1].
    pub fn param(&self, k: usize) -> f64 {
        k as f64 / (self.samples.len() - 1) as f64
    }

    /// The same curve traversed backwards.
    pub fn reversed(&self) -> Self {
        let mut samples = self.samples.clone();
        samples.reverse();
        unwrap_curve(samples).expect("reversal preserves the sampling contract")
    }

    /// Concatenation; the end of `self` must coincide with the start of
    /// `other` to within the closure tolerance.
    pub fn concat(&self, other: &MatrixCurve) -> Result<Self> {
        let end = self.samples.last().unwrap();
        let start = &other.samples[0];
        if end.dist(start) > CLOSURE_TOL {
            return Err(GeomError::InvalidCurve {
                reason: "concatenation endpoints do not coincide".into(),
            });
        }
        let mut samples = self.samples.clone();
        samples.extend_from_slice(&other.samples[1..]);
        unwrap_curve(samples)
    }

    /// A closed curve traversed `times` times.
    pub fn repeated(&self, times: usize) -> Result<Self> {
        if !self.closed {
            return Err(GeomError::NotClosed);
        }
        let mut samples = self.samples.clone();
        for _ in 1..times {
            samples.extend_from_slice(&self.samples[1..]);
        }
        unwrap_curve(samples)
    }
}

/// JSON curve-file schema consumed by the CLI.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CurveSpec {
    Samples {
        points: Vec<[f64; 3]>,
        closed: bool,
    },
    Circle {
        center_z: f64,
        radius: f64,
        phi_start: f64,
        phi_end: f64,
        n: usize,
    },
    Segment {
        from: [f64; 3],
        to: [f64; 3],
        n: usize,
    },
    Composite {
        parts: Vec<CurveSpec>,
    },
}

impl CurveSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| GeomError::InvalidCurve {
            reason: format!("curve file does not match the schema: {e}"),
        })
    }

    /// Materialize the curve at its native sample count.
    pub fn build(&self) -> Result<MatrixCurve> {
        match self {
            CurveSpec::Samples { points, closed } => {
                let samples: Vec<SymPoint> =
                    points.iter().map(|p| SymPoint::new(p[0], p[1], p[2])).collect();
                let curve = unwrap_curve(samples)?;
                if *closed && !curve.closed() {
                    return Err(GeomError::InvalidCurve {
                        reason: "curve is declared closed but its endpoints do not coincide".into(),
                    });
                }
                Ok(curve)
            }
            CurveSpec::Circle {
                center_z,
                radius,
                phi_start,
                phi_end,
                n,
            } => MatrixCurve::circle(*center_z, *radius, *phi_start, *phi_end, *n),
            CurveSpec::Segment { from, to, n } => MatrixCurve::segment(
                SymPoint::new(from[0], from[1], from[2]),
                SymPoint::new(to[0], to[1], to[2]),
                *n,
            ),
            CurveSpec::Composite { parts } => {
                if parts.is_empty() {
                    return Err(GeomError::InvalidCurve {
                        reason: "composite curve has no parts".into(),
                    });
                }
                let mut acc = parts[0].build()?;
                for part in &parts[1..] {
                    acc = acc.concat(&part.build()?)?;
                }
                Ok(acc)
            }
        }
    }

    /// Materialize an analytic primitive with `n` samples (used by the
    /// benchmark to sweep sample counts). Sampled curves cannot be resampled.
    pub fn build_with_samples(&self, n: usize) -> Result<MatrixCurve> {
        match self {
            CurveSpec::Samples { points, .. } => {
                if points.len() == n {
                    self.build()
                } else {
                    Err(GeomError::InvalidCurve {
                        reason: format!(
                            "a sampled curve with {} points cannot be resampled to {n}",
                            points.len()
                        ),
                    })
                }
            }
            CurveSpec::Circle {
                center_z,
                radius,
                phi_start,
                phi_end,
                ..
            } => MatrixCurve::circle(*center_z, *radius, *phi_start, *phi_end, n),
            CurveSpec::Segment { from, to, .. } => MatrixCurve::segment(
                SymPoint::new(from[0], from[1], from[2]),
                SymPoint::new(to[0], to[1], to[2]),
                n,
            ),
            CurveSpec::Composite { parts } => {
                let per_part = (n / parts.len()).max(2);
                let resampled: Vec<CurveSpec> = parts.clone();
                let mut acc = resampled[0].build_with_samples(per_part)?;
                for part in &resampled[1..] {
                    acc = acc.concat(&part.build_with_samples(per_part)?)?;
                }
                Ok(acc)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::TAU;

    #[test]
    fn unit_circle_track_gains_one_turn() {
        let c = MatrixCurve::circle(0.0, 1.0, 0.0, TAU, 100).unwrap();
        let track = c.unwrapped_phi();
        assert_relative_eq!(track[99] - track[0], TAU, max_relative = 1e-12);
        assert!(c.closed());
        assert_relative_eq!(c.smooth_sweep(), TAU, max_relative = 1e-12);
    }

    #[test]
    fn branch_cut_arc_has_no_jump() {
        // Small arc straddling phi = pi.
        let c = MatrixCurve::circle(0.0, 2.0, PI - 0.2, PI + 0.2, 21).unwrap();
        let track = c.unwrapped_phi();
        for w in track.windows(2) {
            assert!((w[1] - w[0]).abs() < 0.03, "2*pi jump leaked into the track");
        }
        assert_relative_eq!(track[20] - track[0], 0.4, max_relative = 1e-12);
    }

    #[test]
    fn square_and_triangle_loops_pass_degenerate_fails() {
        let square: Vec<SymPoint> = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0), (1.0, 0.0)]
            .iter()
            .map(|&(x, y)| SymPoint::new(x, y, 0.0))
            .collect();
        let c = unwrap_curve(square).unwrap();
        assert_relative_eq!(c.smooth_sweep(), TAU, max_relative = 1e-12);

        let triangle: Vec<SymPoint> = [0.0, TAU / 3.0, 2.0 * TAU / 3.0, TAU]
            .iter()
            .map(|&phi| SymPoint::from_cylindrical(1.0, phi, 0.0))
            .collect();
        assert!(unwrap_curve(triangle).is_ok());

        // Two antipodal samples: |delta phi| = pi is ambiguous.
        let degenerate = vec![SymPoint::new(1.0, 0.0, 0.0), SymPoint::new(-1.0, 0.0, 0.0)];
        assert!(matches!(
            unwrap_curve(degenerate),
            Err(GeomError::SamplingTooCoarse { index: 1 })
        ));
    }

    #[test]
    fn all_singular_rejected() {
        let samples = vec![SymPoint::new(0.0, 0.0, 0.0), SymPoint::new(0.0, 0.0, 1.0)];
        assert!(matches!(unwrap_curve(samples), Err(GeomError::AllSingular)));
    }

    #[test]
    fn reversal_negates_smooth_sweep() {
        let c = MatrixCurve::circle(0.3, 1.5, 0.1, 4.0, 64).unwrap();
        let r = c.reversed();
        assert_relative_eq!(r.smooth_sweep(), -c.smooth_sweep(), max_relative = 1e-12);
    }

    #[test]
    fn crossing_run_is_bridged_not_rejected() {
        // Diameter through the origin: the origin sample separates the arms.
        let samples = vec![
            SymPoint::new(1.0, 0.0, 0.0),
            SymPoint::new(0.5, 0.0, 0.0),
            SymPoint::new(0.0, 0.0, 0.0),
            SymPoint::new(-0.5, 0.0, 0.0),
            SymPoint::new(-1.0, 0.0, 0.0),
        ];
        let c = unwrap_curve(samples).unwrap();
        // Smooth sweep excludes the jump; the track carries it.
        assert_relative_eq!(c.smooth_sweep(), 0.0);
        let track = c.unwrapped_phi();
        assert_relative_eq!(track[4] - track[0], PI);
    }

    #[test]
    fn curve_spec_round_trip() {
        let text = r#"{"kind":"circle","center_z":0.0,"radius":1.0,"phi_start":0.0,"phi_end":6.283185307179586,"n":64}"#;
        let spec = CurveSpec::from_json(text).unwrap();
        let c = spec.build().unwrap();
        assert_eq!(c.len(), 64);
        assert!(c.closed());

        let bad = r#"{"kind":"circle","radius":1.0}"#;
        assert!(CurveSpec::from_json(bad).is_err());
    }

    #[test]
    fn declared_closure_is_validated() {
        let spec = CurveSpec::Samples {
            points: vec![[1.0, 0.0, 0.0], [1.5, 0.2, 0.0], [2.0, 0.5, 0.3]],
            closed: true,
        };
        assert!(matches!(spec.build(), Err(GeomError::InvalidCurve { .. })));

        let spec = CurveSpec::Samples {
            points: vec![[1.0, 0.0, 0.0], [1.5, 0.2, 0.0], [1.0, 0.0, 0.0]],
            closed: true,
        };
        assert!(spec.build().unwrap().closed());
    }

    #[test]
    fn composite_joins_parts() {
        let spec = CurveSpec::Composite {
            parts: vec![
                CurveSpec::Segment {
                    from: [1.0, 0.0, 0.0],
                    to: [2.0, 0.0, 0.0],
                    n: 10,
                },
                CurveSpec::Segment {
                    from: [2.0, 0.0, 0.0],
                    to: [2.0, 0.0, 3.0],
                    n: 10,
                },
            ],
        };
        let c = spec.build().unwrap();
        assert_eq!(c.len(), 19);
    }
}

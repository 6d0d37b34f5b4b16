//! Desk-scale comparison of eigenvector continuation by parallel transport
//! against repeated closed-form eigendecomposition.
//!
//! For 2x2 matrices both pipelines are cheap, so no speed claim is asserted;
//! the report carries the measured wall times for information and the
//! maximum angular discrepancy between the two eigenvector tracks, which is
//! the quantity that actually matters.

use serde::Serialize;
use std::hint::black_box;
use std::time::Instant;

use crate::curve::CurveSpec;
use crate::eigen::{angle_mod_sign, eigen_numeric};
use crate::error::{GeomError, Result};
use crate::transport::{eigenvector_continuation, IntegratorOptions};

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub n_samples: usize,
    pub steps_per_sample: usize,
    pub repeats: usize,
    /// Median wall time of the transport pipeline, seconds.
    pub wall_time_transport: f64,
    /// Median wall time of per-sample eigendecomposition, seconds.
    pub wall_time_repeated_eig: f64,
    /// Informational ratio repeated_eig / transport; not asserted anywhere.
    pub time_ratio: f64,
    /// Max angle (radians, mod sign) between the transported vector and the
    /// entry-only eigensolver across all samples.
    pub max_angle_error: f64,
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs[xs.len() / 2]
}

/// Time both pipelines over the same sample set and record the worst angular
/// discrepancy. The curve must stay at r >= 0.1 so that eigenvector
/// directions are well conditioned along the whole family.
pub fn run_bench(
    spec: &CurveSpec,
    n_samples: usize,
    steps_per_sample: usize,
    repeats: usize,
) -> Result<BenchReport> {
    if n_samples < 10 {
        return Err(GeomError::SamplingTooCoarse { index: 0 });
    }
    let curve = spec.build_with_samples(n_samples)?;
    if let Some(bad) = curve.samples().iter().position(|p| p.r() < 0.1) {
        return Err(GeomError::SamplingTooCoarse { index: bad });
    }
    let repeats = repeats.max(3);
    let opts = IntegratorOptions {
        steps_per_sample: steps_per_sample.max(1),
    };

    let transported = eigenvector_continuation(&curve, 1, opts)?;
    let mut max_angle_error = 0.0f64;
    for (v, p) in transported.vectors.iter().zip(curve.samples()) {
        let f = v.frame_components();
        let norm = f[0].hypot(f[1]);
        let dir = [f[0] / norm, f[1] / norm];
        max_angle_error = max_angle_error.max(angle_mod_sign(dir, eigen_numeric(p).v1));
    }

    let mut transport_times = Vec::with_capacity(repeats);
    let mut eig_times = Vec::with_capacity(repeats);
    for _ in 0..repeats {
        let t0 = Instant::now();
        let res = eigenvector_continuation(&curve, 1, opts)?;
        black_box(res.phase);
        transport_times.push(t0.elapsed().as_secs_f64());

        let t0 = Instant::now();
        let mut acc = 0.0;
        for p in curve.samples() {
            let e = eigen_numeric(p);
            acc += e.v1[0];
        }
        black_box(acc);
        eig_times.push(t0.elapsed().as_secs_f64());
    }

    let wall_time_transport = median(transport_times);
    let wall_time_repeated_eig = median(eig_times);
    Ok(BenchReport {
        n_samples,
        steps_per_sample: opts.steps_per_sample,
        repeats,
        wall_time_transport,
        wall_time_repeated_eig,
        time_ratio: wall_time_repeated_eig / wall_time_transport.max(f64::MIN_POSITIVE),
        max_angle_error,
    })
}

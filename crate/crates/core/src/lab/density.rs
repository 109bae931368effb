use std::f64::consts::PI;

use serde::Serialize;

use crate::exec::{map_indices, ExecMode};
use crate::group::rng::{derive_seed, sample_stream};
use crate::group::Quat;

use super::report::{stat_tolerance, ProbeReport};

const CHUNK: usize = 4096;

/// Distribution function of `t = tr(g)/2` under Haar measure on SU(2),
/// the integral of `(2/π)√(1−t²)` from −1.
pub fn trace_cdf(t: f64) -> f64 {
    let t = t.clamp(-1.0, 1.0);
    0.5 + (t * (1.0 - t * t).sqrt() + t.asin()) / PI
}

/// Binned Haar masses of `t = tr(g)/2` on `[−1, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityHistogram {
    pub samples: usize,
    pub edges: Vec<f64>,
    pub observed: Vec<f64>,
    pub expected: Vec<f64>,
}

impl DensityHistogram {
    pub fn sup_deviation(&self) -> f64 {
        self.observed.iter().zip(&self.expected).map(|(o, e)| (o - e).abs()).fold(0.0, f64::max)
    }

    /// Largest difference between mirror-image bins.
    pub fn asymmetry(&self) -> f64 {
        let n = self.observed.len();
        (0..n / 2).map(|i| (self.observed[i] - self.observed[n - 1 - i]).abs()).fold(0.0, f64::max)
    }

    pub fn total_mass(&self) -> f64 {
        self.observed.iter().sum()
    }
}

pub fn density_histogram(samples: usize, bins: usize, seed: u64, mode: ExecMode) -> DensityHistogram {
    let bins = bins.max(1);
    let stream_seed = derive_seed(seed, "density");
    let chunks = samples.div_ceil(CHUNK);
    let partial = map_indices(chunks, mode, |c| {
        let mut counts = vec![0u64; bins];
        for i in c * CHUNK..((c + 1) * CHUNK).min(samples) {
            let mut rng = sample_stream(stream_seed, i as u64);
            let t = Quat::sample_haar(&mut rng).w();
            let b = (((t + 1.0) / 2.0 * bins as f64).floor() as usize).min(bins - 1);
            counts[b] += 1;
        }
        counts
    });
    let mut counts = vec![0u64; bins];
    for p in partial {
        for (c, x) in counts.iter_mut().zip(p) {
            *c += x;
        }
    }
    let edges: Vec<f64> = (0..=bins).map(|i| -1.0 + 2.0 * i as f64 / bins as f64).collect();
    let n = samples.max(1) as f64;
    DensityHistogram {
        samples,
        observed: counts.iter().map(|&c| c as f64 / n).collect(),
        expected: edges.windows(2).map(|w| trace_cdf(w[1]) - trace_cdf(w[0])).collect(),
        edges,
    }
}

/// Sup-norm comparison of the histogram with the exact bin masses, plus
/// mirror symmetry and total mass.
pub fn quotient_density_histogram(
    samples: usize,
    bins: usize,
    seed: u64,
    mode: ExecMode,
) -> (DensityHistogram, Vec<ProbeReport>) {
    let h = density_histogram(samples, bins, seed, mode);
    let reports = vec![
        ProbeReport::new("density.sup_deviation", h.sup_deviation(), 0.0, stat_tolerance(0.01, samples))
            .detail("bins", bins)
            .detail("samples", samples),
        ProbeReport::new("density.symmetry", h.asymmetry(), 0.0, stat_tolerance(0.0, samples)),
        ProbeReport::new("density.total_mass", h.total_mass(), 1.0, 1e-12),
    ];
    (h, reports)
}

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::centralizer::{classify, Classify, OrbitType};
use crate::error::{Error, Result};
use crate::exec::{map_indices, ExecMode};
use crate::group::rng::{derive_seed, sample_stream};
use crate::group::{GroupKind, GroupTuple, Tolerance, U1};

use super::report::ProbeReport;

/// Allowed non-generic (or, below the minimal generator count, generic)
/// fraction. Not widened with the sample count: the expected value is
/// exactly 0 or 1, not a sample mean with variance.
pub const CENSUS_SLACK: f64 = 1e-3;

/// Orbit-type frequencies of Haar-random `k`-tuples. Tuples whose decision
/// quantities fall in `[eps_null, eps_generic)` are still binned by the
/// classifier and additionally counted in `ambiguous_fraction`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub group: GroupKind,
    pub k: usize,
    pub samples: usize,
    pub seed: u64,
    pub fractions: BTreeMap<OrbitType, f64>,
    pub ambiguous_fraction: f64,
}

impl CensusReport {
    pub fn generic_fraction(&self) -> f64 {
        self.fractions[&OrbitType::Center]
    }
}

/// SU(2) census.
pub fn stratum_census(k: usize, samples: usize, seed: u64, tol: &Tolerance, mode: ExecMode) -> Result<CensusReport> {
    stratum_census_in(GroupKind::Su2, k, samples, seed, tol, mode)
}

pub fn stratum_census_in(
    group: GroupKind,
    k: usize,
    samples: usize,
    seed: u64,
    tol: &Tolerance,
    mode: ExecMode,
) -> Result<CensusReport> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be ≥ 1".into()));
    }
    let outcomes = match group {
        GroupKind::Su2 => {
            let stream_seed = derive_seed(seed, &format!("census/k{k}"));
            map_indices(samples, mode, |i| {
                let mut rng = sample_stream(stream_seed, i as u64);
                let c = classify(&GroupTuple::sample_haar(k, &mut rng), tol);
                (c.centralizer.orbit_type(), c.ambiguous)
            })
        }
        GroupKind::U1 => {
            let stream_seed = derive_seed(seed, &format!("census/u1/k{k}"));
            map_indices(samples, mode, |i| {
                let mut rng = sample_stream(stream_seed, i as u64);
                (U1::orbit_type(&GroupTuple::sample_haar(k, &mut rng), tol), false)
            })
        }
    };
    let mut counts: BTreeMap<OrbitType, usize> =
        [OrbitType::Full, OrbitType::U1, OrbitType::Center].into_iter().map(|t| (t, 0)).collect();
    let mut ambiguous = 0usize;
    for (t, amb) in outcomes {
        *counts.get_mut(&t).expect("all types present") += 1;
        ambiguous += amb as usize;
    }
    let n = samples.max(1) as f64;
    Ok(CensusReport {
        group,
        k,
        samples,
        seed,
        fractions: counts.into_iter().map(|(t, c)| (t, c as f64 / n)).collect(),
        ambiguous_fraction: ambiguous as f64 / n,
    })
}

/// Generic fraction near 1 from the minimal generator count on (SU(2):
/// k ≥ 2, U(1): k ≥ 1), near 0 below it, and a small ambiguous fraction.
pub fn census_probes(r: &CensusReport) -> Vec<ProbeReport> {
    let prefix = format!("census.{}.k{}", r.group, r.k);
    let below_kmin = r.group == GroupKind::Su2 && r.k < 2;
    let (lo, hi) = if below_kmin { (0.0, CENSUS_SLACK) } else { (1.0 - CENSUS_SLACK, 1.0) };
    vec![
        ProbeReport::within(format!("{prefix}.generic_fraction"), r.generic_fraction(), lo, hi)
            .detail("fractions", &r.fractions)
            .detail("samples", r.samples),
        ProbeReport::within(format!("{prefix}.ambiguous_fraction"), r.ambiguous_fraction, 0.0, CENSUS_SLACK),
    ]
}

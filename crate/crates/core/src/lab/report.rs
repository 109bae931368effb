use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Outcome of one numerical check. `pass` holds exactly when
/// `|observed − expected| ≤ tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub name: String,
    pub observed: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default)]
    pub details: BTreeMap<String, Value>,
}

impl ProbeReport {
    pub fn new(name: impl Into<String>, observed: f64, expected: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            observed,
            expected,
            tolerance,
            pass: (observed - expected).abs() <= tolerance,
            details: BTreeMap::new(),
        }
    }

    /// Passes when `observed ∈ [lo, hi]`, encoded as midpoint and half-width.
    /// Passes when `lo ≤ observed ≤ hi`, compared against the bounds
    /// themselves rather than the stored midpoint.
    pub fn within(name: impl Into<String>, observed: f64, lo: f64, hi: f64) -> Self {
        let mut r = Self::new(name, observed, (lo + hi) / 2.0, (hi - lo) / 2.0).detail("lower", lo).detail("upper", hi);
        r.pass = (lo..=hi).contains(&observed);
        r
    }

    pub fn detail(mut self, key: &str, value: impl Serialize) -> Self {
        self.details.insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }

    /// Forces a failure, keeping the reason in the details.
    pub fn fail(mut self, reason: &str) -> Self {
        self.pass = false;
        self.detail("failure", reason)
    }
}

/// Statistical tolerance: the larger of a fixed floor and `4/√n`.
pub fn stat_tolerance(floor: f64, samples: usize) -> f64 {
    floor.max(4.0 / (samples.max(1) as f64).sqrt())
}

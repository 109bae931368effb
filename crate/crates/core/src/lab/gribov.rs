use std::f64::consts::PI;

use serde::Serialize;

use crate::canonical::{canonicalize, canonicalize_with_pivot, in_pivot_domain, pivot_select, Pivot};
use crate::centralizer::commutant_spectrum;
use crate::error::{Error, Result};
use crate::exec::{map_indices, ExecMode};
use crate::group::rng::{derive_seed, sample_stream};
use crate::group::{GroupTuple, Quat, Tolerance};

/// Jumps at least this large count as discontinuities of the section.
pub const JUMP_THRESHOLD: f64 = 0.1;

/// Pivot pair that stays generic along the whole path: `(I, K)`.
pub const FROZEN_PIVOT: (usize, usize) = (0, 2);

/// Axis of the middle component: from `e₂` through `e₁` (at `t = ½`) to
/// `e₃`. Both halves are great-circle arcs.
fn sweep_axis(t: f64) -> [f64; 3] {
    let (s, c) = (PI * t).sin_cos();
    if t <= 0.5 {
        [s, c, 0.0]
    } else {
        [s, 0.0, -c]
    }
}

/// `T(t) = (I, cos(π/3) + sin(π/3)·u(t), K)`, conjugated by `g`.
pub fn gribov_path(t: f64, g: &Quat) -> GroupTuple<Quat> {
    GroupTuple::new(vec![Quat::I, Quat::from_axis_angle(sweep_axis(t), PI / 3.0), Quat::K]).conjugate(g)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GribovTrace {
    pub steps: usize,
    /// Parameter increment `1/steps`.
    pub path_step: f64,
    pub max_jump: f64,
    /// Transitions `i → i+1` whose canonical forms jump by at least the
    /// threshold.
    pub jump_transitions: Vec<usize>,
    /// Transitions where the chosen pivot pair changes.
    pub pivot_switches: Vec<usize>,
    /// Largest consecutive jump with the pivot frozen at `(I, K)`. The
    /// frozen section is continuous along the path, so this also bounds
    /// consecutive orbit distances.
    pub frozen_max_jump: f64,
    /// Smallest commutant singular value along the path.
    pub min_margin: f64,
    pub largest_raw_step: f64,
}

/// Follows the pivot-rule canonical section along [`gribov_path`]. The
/// path stays generic (its first and last components already have
/// central centralizer) but the preferred pivot `(0, 1)` degenerates at
/// `t = ½`, where the section switches to `(0, 2)` and jumps.
///
/// `steps` is rounded up to an even number so `t = ½` is on the grid.
/// The whole path is conjugated by a Haar element drawn from `seed`.
#[allow(clippy::type_complexity)]
pub fn gribov_trace(steps: usize, seed: u64, tol: &Tolerance) -> Result<GribovTrace> {
    if steps < 100 {
        return Err(Error::InvalidArgument(format!("steps must be ≥ 100, got {steps}")));
    }
    let steps = steps + steps % 2;
    let g = Quat::sample_haar(&mut sample_stream(derive_seed(seed, "gribov"), 0));
    // (raw tuple, pivot, pivot-rule form, frozen-pivot form) at the last step.
    let mut prev: Option<(GroupTuple<Quat>, Pivot, GroupTuple<Quat>, GroupTuple<Quat>)> = None;
    let mut trace = GribovTrace {
        steps,
        path_step: 1.0 / steps as f64,
        max_jump: 0.0,
        jump_transitions: Vec::new(),
        pivot_switches: Vec::new(),
        frozen_max_jump: 0.0,
        min_margin: f64::INFINITY,
        largest_raw_step: 0.0,
    };
    for i in 0..=steps {
        let t = gribov_path(i as f64 / steps as f64, &g);
        let margin = commutant_spectrum(&t, tol)[2];
        if margin < tol.eps_generic {
            return Err(Error::PathLeftGenericStratum { step: i, margin });
        }
        trace.min_margin = trace.min_margin.min(margin);
        let pivot = pivot_select(&t, tol)?;
        let canon = canonicalize(&t, tol)?.tuple;
        let frozen_pivot = Pivot { pair: FROZEN_PIVOT, margin: 0.0, low_margin: false };
        let frozen = canonicalize_with_pivot(&t, frozen_pivot, tol)?.tuple;
        if let Some((raw, p, c, f)) = &prev {
            let jump = canon.distance(c);
            trace.max_jump = trace.max_jump.max(jump);
            if jump >= JUMP_THRESHOLD {
                trace.jump_transitions.push(i - 1);
            }
            if pivot.pair != p.pair {
                trace.pivot_switches.push(i - 1);
            }
            trace.frozen_max_jump = trace.frozen_max_jump.max(frozen.distance(f));
            trace.largest_raw_step = trace.largest_raw_step.max(t.distance(raw));
        }
        prev = Some((t, pivot, canon, frozen));
    }
    Ok(trace)
}

/// Sampled Haar measure of the domain of the fixed pivot `(0, 1)` in
/// `SU(2)^k`: one open set of an almost-global trivialization. No cover is
/// singled out as canonical; this only measures the obvious one.
pub fn fixed_pivot_coverage(k: usize, samples: usize, seed: u64, tol: &Tolerance, mode: ExecMode) -> Result<f64> {
    if k < 2 || samples == 0 {
        return Err(Error::InvalidArgument(format!("need k ≥ 2 and samples ≥ 1, got k = {k}, samples = {samples}")));
    }
    let stream_seed = derive_seed(seed, &format!("pivot_domain/k{k}"));
    let inside = map_indices(samples, mode, |i| {
        let t = GroupTuple::<Quat>::sample_haar(k, &mut sample_stream(stream_seed, i as u64));
        in_pivot_domain(&t, (0, 1), tol)
    });
    Ok(inside.iter().filter(|&&b| b).count() as f64 / samples as f64)
}

impl GribovTrace {
    /// Every jump sits on a pivot switch, and there is at least one.
    pub fn jumps_localized(&self) -> bool {
        !self.jump_transitions.is_empty() && self.jump_transitions.iter().all(|i| self.pivot_switches.contains(i))
    }

    pub fn reports(&self, tol: &Tolerance) -> Vec<crate::lab::ProbeReport> {
        use crate::lab::ProbeReport;
        let mut localized =
            ProbeReport::new("gribov.jumps_at_pivot_switch", self.jumps_localized() as u8 as f64, 1.0, 0.0)
                .detail("jump_transitions", &self.jump_transitions)
                .detail("pivot_switches", &self.pivot_switches);
        if !self.jumps_localized() {
            localized = localized.fail("jumps not confined to pivot switches");
        }
        vec![
            ProbeReport::within("gribov.max_jump", self.max_jump, JUMP_THRESHOLD, 2.0).detail("steps", self.steps),
            localized,
            ProbeReport::within("gribov.frozen_max_jump", self.frozen_max_jump, 0.0, 10.0 * self.path_step)
                .detail("largest_raw_step", self.largest_raw_step),
            ProbeReport::within("gribov.min_margin", self.min_margin, tol.eps_generic, 2.0),
        ]
    }
}

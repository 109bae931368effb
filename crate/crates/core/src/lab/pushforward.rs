use crate::error::Result;
use crate::exec::{map_indices, pairwise_sum, ExecMode};
use crate::group::rng::{derive_seed, sample_stream};
use crate::group::Quat;
use crate::lattice::{fundamental_system, reduction_map, Connection, Graph};

use super::report::{stat_tolerance, ProbeReport};

/// Character `χ_{1/2}(g) = tr g` of the defining representation.
pub fn chi_half(g: &Quat) -> f64 {
    2.0 * g.w()
}

/// Character `χ_1(g) = (tr g)² − 1` of the adjoint representation.
pub fn chi_one(g: &Quat) -> f64 {
    4.0 * g.w() * g.w() - 1.0
}

/// Loop holonomies of Haar-random connections should be iid Haar. Checks
/// the first moments that Haar measure pins down: nontrivial character
/// means vanish, defining characters of distinct loops are uncorrelated,
/// and the trivial character averages to 1.
pub fn pushforward_haar_test(
    graph: &Graph,
    name: &str,
    samples: usize,
    seed: u64,
    mode: ExecMode,
) -> Result<Vec<ProbeReport>> {
    let fs = fundamental_system(graph)?;
    let k = fs.rank();
    let stream_seed = derive_seed(seed, &format!("pushforward/{name}"));
    let rows: Vec<Vec<f64>> = map_indices(samples, mode, |i| {
        let mut rng = sample_stream(stream_seed, i as u64);
        let c = Connection::<Quat>::sample_haar(graph, &mut rng);
        let loops = reduction_map(&c, &fs).expect("connection built on this graph");
        let mut row = Vec::with_capacity(2 * k + k * k + 1);
        for g in loops.elements() {
            row.push(chi_half(g));
            row.push(chi_one(g));
        }
        for a in 0..k {
            for b in a + 1..k {
                row.push(chi_half(&loops[a]) * chi_half(&loops[b]));
            }
        }
        row.push(1.0);
        row
    });
    let n = samples.max(1) as f64;
    let column = |j: usize| pairwise_sum(&rows.iter().map(|r| r[j]).collect::<Vec<_>>()) / n;
    let tol = stat_tolerance(0.0, samples);
    let mut reports = Vec::new();
    for i in 0..k {
        reports.push(ProbeReport::new(format!("pushforward.{name}.chi_half.loop{i}"), column(2 * i).abs(), 0.0, tol));
        reports.push(ProbeReport::new(
            format!("pushforward.{name}.chi_one.loop{i}"),
            column(2 * i + 1).abs(),
            0.0,
            tol,
        ));
    }
    let mut j = 2 * k;
    for a in 0..k {
        for b in a + 1..k {
            reports.push(ProbeReport::new(
                format!("pushforward.{name}.cross.loop{a}_loop{b}"),
                column(j).abs(),
                0.0,
                tol,
            ));
            j += 1;
        }
    }
    reports.push(ProbeReport::new(format!("pushforward.{name}.trivial"), column(j), 1.0, 0.0));
    Ok(reports.into_iter().map(|r| r.detail("samples", samples).detail("loops", k)).collect())
}

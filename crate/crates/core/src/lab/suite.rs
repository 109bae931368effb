//! The full verification suite, grouped by the claim each group checks.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::canonical::standard_form_pair;
use crate::centralizer::{centralizer_tuple, commutant_dim};
use crate::error::Error;
use crate::exec::{map_indices, ExecMode};
use crate::group::rng::{derive_seed, sample_stream};
use crate::group::{GroupKind, GroupTuple, Quat, Tolerance, U1};
use crate::lattice::{
    abelian_canonical, apply_gauge, construct_connection, corpus, fundamental_system, is_in_normalizer,
    stabilizer_description, Connection, FundamentalSystem, GaugeTransform,
};

use super::census::{census_probes, stratum_census, CENSUS_SLACK};
use super::density::quotient_density_histogram;
use super::dimension::{codim_check, dimension_probe, family_type_probe, FAMILIES, PROBE_STEPS};
use super::gribov::{fixed_pivot_coverage, gribov_trace};
use super::kmin::kmin_search;
use super::pushforward::pushforward_haar_test;
use super::report::ProbeReport;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub samples: usize,
    pub seed: u64,
    pub tol: Tolerance,
    pub mode: ExecMode,
    pub bins: usize,
    pub steps: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { samples: 100_000, seed: 42, tol: Tolerance::default(), mode: ExecMode::Parallel, bins: 50, steps: 1000 }
    }
}

fn rng_for(cfg: &SuiteConfig, label: &str) -> impl Rng {
    sample_stream(derive_seed(cfg.seed, label), 0)
}

/// Closed-form adjoint action against the direct product `c⁻¹ a c`.
pub fn adjoint_formula(cfg: &SuiteConfig) -> Vec<ProbeReport> {
    let mut rng = rng_for(cfg, "suite/adjoint");
    let n = 10_000;
    let worst = (0..n)
        .map(|_| {
            let a = Quat::sample_haar(&mut rng);
            let c = Quat::sample_haar(&mut rng);
            a.adjoint(&c).distance(&c.inverse().compose(&a).compose(&c))
        })
        .fold(0.0, f64::max);
    vec![ProbeReport::within("adjoint.formula_vs_product", worst, 0.0, 1e-12).detail("pairs", n)]
}

/// Tuples on both sides of each classifier threshold, built on coordinate
/// axes so the decision quantities are exact.
pub fn boundary_suite(tol: &Tolerance) -> Vec<GroupTuple<Quat>> {
    let eps = tol.eps_null;
    let axes = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let mut out = Vec::new();
    for s in [0.0, eps / 2.0, 2.0 * eps] {
        out.push(GroupTuple::new(vec![Quat::normalized((1.0 - s * s).sqrt(), s, 0.0, 0.0)]));
        out.push(GroupTuple::new(vec![Quat::normalized((1.0 - s * s).sqrt(), 0.0, s, 0.0), Quat::MINUS_ONE]));
    }
    for (i, a) in axes.iter().enumerate() {
        for (j, b) in axes.iter().enumerate() {
            if i == j {
                continue;
            }
            for delta in [0.0, eps, 2.0 * eps] {
                let (sd, cd) = delta.sin_cos();
                let tilted = [0, 1, 2].map(|n| cd * a[n] + sd * b[n]);
                let first = Quat::from_axis_angle(*a, 1.0);
                let second = Quat::from_axis_angle(tilted, 0.7);
                out.push(GroupTuple::new(vec![first, second]));
                out.push(GroupTuple::new(vec![first, second, Quat::from_axis_angle(*a, 2.0)]));
            }
        }
    }
    out
}

/// The rule-based classifier against the commutant nullspace dimension.
pub fn classifier_agreement(cfg: &SuiteConfig) -> Vec<ProbeReport> {
    let tol = cfg.tol;
    let agree = |t: &GroupTuple<Quat>| centralizer_tuple(t, &tol).lie_dim() == commutant_dim(t, &tol);
    let mut reports = Vec::new();
    for k in 1..=3 {
        let seed = derive_seed(cfg.seed, &format!("suite/classifier/k{k}"));
        let n = 10_000;
        let bad = map_indices(n, cfg.mode, |i| !agree(&GroupTuple::sample_haar(k, &mut sample_stream(seed, i as u64))))
            .into_iter()
            .filter(|&b| b)
            .count();
        reports.push(ProbeReport::new(format!("classifier.haar.k{k}"), bad as f64, 0.0, 0.0).detail("samples", n));
    }
    let crafted = boundary_suite(&tol);
    let bad = crafted.iter().filter(|t| !agree(t)).count();
    reports.push(ProbeReport::new("classifier.boundary_suite", bad as f64, 0.0, 0.0).detail("tuples", crafted.len()));
    reports
}

/// Standard forms of conjugate pairs agree and every witness checks out.
pub fn standard_form_invariance(cfg: &SuiteConfig) -> Vec<ProbeReport> {
    let mut rng = rng_for(cfg, "suite/standard_form");
    let tol = cfg.tol;
    let (mut worst_form, mut worst_witness, mut failures) = (0.0f64, 0.0f64, 0usize);
    for _ in 0..1000 {
        let t = GroupTuple::<Quat>::sample_haar(2, &mut rng);
        let g = Quat::sample_haar(&mut rng);
        let s = t.conjugate(&g);
        match (standard_form_pair(&t[0], &t[1], &tol), standard_form_pair(&s[0], &s[1], &tol)) {
            (Ok((f1, w1)), Ok((f2, w2))) => {
                let diff = [(f1.lambda - f2.lambda).re, (f1.lambda - f2.lambda).im, (f1.x - f2.x).re, (f1.x - f2.x).im]
                    .iter()
                    .fold(0.0f64, |m, v| m.max(v.abs()));
                worst_form = worst_form.max(diff);
                let canon = GroupTuple::new(vec![f1.first(), f1.second()]);
                worst_witness = worst_witness.max(t.conjugate(&w1.0).distance(&canon));
                let canon = GroupTuple::new(vec![f2.first(), f2.second()]);
                worst_witness = worst_witness.max(s.conjugate(&w2.0).distance(&canon));
            }
            _ => failures += 1,
        }
    }
    vec![
        ProbeReport::within("standard_form.invariance", worst_form, 0.0, 1e-8).detail("failures", failures),
        ProbeReport::within("standard_form.witness", worst_witness, 0.0, 1e-9),
        ProbeReport::new("standard_form.failures", failures as f64, 0.0, 0.0),
    ]
}

/// Generic fraction and threshold-band fraction for k = 2, 3.
pub fn generic_measure(cfg: &SuiteConfig) -> Vec<ProbeReport> {
    [2, 3]
        .into_iter()
        .flat_map(|k| match stratum_census(k, cfg.samples, cfg.seed, &cfg.tol, cfg.mode) {
            Ok(c) => census_probes(&c),
            Err(e) => vec![ProbeReport::new(format!("census.k{k}"), f64::NAN, 1.0, 0.0).fail(&e.to_string())],
        })
        .collect()
}

pub fn haar_pushforward(cfg: &SuiteConfig) -> Vec<ProbeReport> {
    corpus::corpus()
        .into_iter()
        .flat_map(|(name, g)| match pushforward_haar_test(&g, name, cfg.samples, cfg.seed, cfg.mode) {
            Ok(r) => r,
            Err(e) => vec![ProbeReport::new(format!("pushforward.{name}"), f64::NAN, 0.0, 0.0).fail(&e.to_string())],
        })
        .collect()
}

/// The trace histogram uses ten times the configured sample count.
pub fn quotient_density(cfg: &SuiteConfig) -> Vec<ProbeReport> {
    quotient_density_histogram(10 * cfg.samples, cfg.bins, cfg.seed, cfg.mode).1
}

pub fn dimension_table(cfg: &SuiteConfig) -> Vec<ProbeReport> {
    let mut reports = Vec::new();
    for f in FAMILIES {
        for step in PROBE_STEPS {
            reports.push(dimension_probe(f.name, step, cfg.seed).expect("listed family"));
        }
        reports.push(family_type_probe(f.name, cfg.seed, &cfg.tol).expect("listed family"));
    }
    reports
}

pub fn codimension(cfg: &SuiteConfig) -> Vec<ProbeReport> {
    [2, 3].into_iter().flat_map(|k| codim_check(k, cfg.seed)).collect()
}

pub fn minimal_generators(cfg: &SuiteConfig) -> Vec<ProbeReport> {
    let search = |kind, k_max| kmin_search(kind, k_max, cfg.samples, cfg.seed, &cfg.tol, cfg.mode);
    let as_report = |name: &str, r: Result<usize, Error>, expected: usize| match r {
        Ok(k) => ProbeReport::new(name, k as f64, expected as f64, 0.0),
        Err(e) => ProbeReport::new(name, f64::NAN, expected as f64, 0.0).fail(&e.to_string()),
    };
    let single = match search(GroupKind::Su2, 1) {
        Err(Error::NotFound { .. }) => {
            ProbeReport::new("kmin.su2.single_element", 1.0, 1.0, 0.0).detail("result", "not found")
        }
        other => ProbeReport::new("kmin.su2.single_element", 0.0, 1.0, 0.0).fail(&format!("{other:?}")),
    };
    vec![
        as_report("kmin.su2", search(GroupKind::Su2, 4), 2),
        as_report("kmin.u1", search(GroupKind::U1, 4), 1),
        single.detail("samples", cfg.samples),
    ]
}

/// Longest fundamental loop; tree-gauged phases move by at most this
/// multiple of a single-edge perturbation.
fn lipschitz_bound(fs: &FundamentalSystem) -> f64 {
    fs.loops().iter().map(|l| l.len()).max().unwrap_or(1).max(1) as f64
}

/// Tree gauge as a global, exactly invariant, Lipschitz section for U(1).
pub fn abelian_triviality(cfg: &SuiteConfig) -> Vec<ProbeReport> {
    let mut rng = rng_for(cfg, "suite/abelian");
    let (mut mismatches, mut trials, mut worst_ratio) = (0usize, 0usize, 0.0f64);
    let graphs = corpus::corpus();
    let per_graph = 1000usize.div_ceil(graphs.len());
    for (_, g) in &graphs {
        let fs = fundamental_system(g).expect("corpus graphs are connected");
        let bound = lipschitz_bound(&fs);
        for _ in 0..per_graph {
            let c = Connection::<U1>::sample_haar(g, &mut rng);
            let t = GaugeTransform::<U1>::sample_haar(g, &mut rng);
            let moved = apply_gauge(g, &c, &t).expect("same graph");
            let base = abelian_canonical(&fs, &c).expect("connected");
            if base != abelian_canonical(&fs, &moved).expect("connected") {
                mismatches += 1;
            }
            trials += 1;
            let edge = &g.edges()[rng.random_range(0..g.edges().len())].id;
            let d = U1::from_angle(rng.random_range(-1e-3..1e-3));
            let nudged = c.with(edge, c.get(edge).expect("edge").compose(&d));
            let moved_by = abelian_canonical(&fs, &nudged).expect("connected").distance(&base);
            let input_step = nudged.distance(&c);
            if input_step > 0.0 {
                worst_ratio = worst_ratio.max(moved_by / (bound * input_step));
            }
        }
    }
    vec![
        ProbeReport::new("abelian.exact_invariance", mismatches as f64, 0.0, 0.0).detail("trials", trials),
        ProbeReport::within("abelian.lipschitz_ratio", worst_ratio, 0.0, 1.0 + 1e-9),
    ]
}

pub fn gribov_witness(cfg: &SuiteConfig) -> Vec<ProbeReport> {
    let mut reports = match gribov_trace(cfg.steps, cfg.seed, &cfg.tol) {
        Ok(trace) => trace.reports(&cfg.tol),
        Err(e) => vec![ProbeReport::new("gribov", f64::NAN, 0.0, 0.0).fail(&e.to_string())],
    };
    let coverage = match fixed_pivot_coverage(3, cfg.samples, cfg.seed, &cfg.tol, cfg.mode) {
        Ok(c) => ProbeReport::within("gribov.fixed_pivot_coverage.k3", c, 1.0 - CENSUS_SLACK, 1.0),
        Err(e) => ProbeReport::new("gribov.fixed_pivot_coverage.k3", f64::NAN, 1.0, 0.0).fail(&e.to_string()),
    };
    reports.push(coverage.detail("samples", cfg.samples));
    reports
}

/// Connections of all three orbit types on a graph, plus gauge-moved
/// copies so tree transports are nontrivial.
pub fn typed_connections<R: Rng>(fs: &FundamentalSystem, rng: &mut R) -> Vec<Connection<Quat>> {
    let g = fs.graph();
    let axis = Quat::sample_haar(rng).vec();
    let line: GroupTuple<Quat> =
        (0..fs.rank()).map(|_| Quat::from_axis_angle(axis, rng.random_range(0.2..3.0))).collect();
    let base = vec![
        Connection::identity(g),
        construct_connection(fs, &line).expect("rank matches"),
        Connection::sample_haar(g, rng),
    ];
    let t = GaugeTransform::sample_haar(g, rng);
    let moved: Vec<_> = base.iter().map(|c| apply_gauge(g, c, &t).expect("same graph")).collect();
    base.into_iter().chain(moved).collect()
}

/// Definition of the normalizer: `t⁻¹ s t` fixes `c` for stabilizer
/// elements `s` (20 draws).
pub fn normalizer_oracle<R: Rng>(
    fs: &FundamentalSystem,
    c: &Connection<Quat>,
    t: &GaugeTransform<Quat>,
    tol: &Tolerance,
    rng: &mut R,
) -> bool {
    let stab = stabilizer_description(fs, c, tol).expect("connected");
    (0..20).all(|_| {
        let s = stab.element(&stab.sample_centralizer(rng));
        let u = t.inverse().compose(&s).compose(t);
        apply_gauge(fs.graph(), c, &u).expect("same graph").distance(c) < 1e-9
    })
}

pub fn stabilizer_normalizer(cfg: &SuiteConfig) -> Vec<ProbeReport> {
    let mut rng = rng_for(cfg, "suite/stabilizer");
    let tol = cfg.tol;
    let (mut worst_fix, mut pairs, mut disagreements, mut members) = (0.0f64, 0usize, 0usize, 0usize);
    let graphs: Vec<_> = corpus::corpus().into_iter().filter(|(_, g)| g.vertices().len() > 1).collect();
    while pairs < 1000 {
        for (_, g) in &graphs {
            let fs = fundamental_system(g).expect("connected");
            for c in typed_connections(&fs, &mut rng) {
                let stab = stabilizer_description(&fs, &c, &tol).expect("connected");
                for _ in 0..5 {
                    let s = stab.element(&stab.sample_centralizer(&mut rng));
                    worst_fix = worst_fix.max(apply_gauge(g, &c, &s).expect("same graph").distance(&c));
                }
                for n in 0..3 {
                    let member = stab.sample_normalizer_member(g.base(), &mut rng);
                    let t = match n {
                        0 => member,
                        // Knock one non-base vertex off the normalizer condition.
                        1 => {
                            let v = g.vertices().iter().find(|v| *v != g.base()).expect("two vertices");
                            let kick = Quat::from_axis_angle(Quat::sample_haar(&mut rng).vec(), 0.5);
                            member.with(v, member.get(v).expect("vertex").compose(&kick))
                        }
                        _ => GaugeTransform::sample_haar(g, &mut rng),
                    };
                    let fast = is_in_normalizer(&fs, &c, &t, &tol).expect("connected");
                    members += fast as usize;
                    if fast != normalizer_oracle(&fs, &c, &t, &tol, &mut rng) {
                        disagreements += 1;
                    }
                    pairs += 1;
                }
            }
        }
    }
    // The trivial connection's stabilizer (constant transforms) is not
    // normalized by a transform that differs between vertices.
    let theta = corpus::theta();
    let fs = fundamental_system(&theta).expect("connected");
    let flat = Connection::<Quat>::identity(&theta);
    let witness = GaugeTransform::constant(&theta, Quat::ONE).with("v", Quat::J);
    let rejected = !is_in_normalizer(&fs, &flat, &witness, &tol).expect("connected");
    let conj = witness.inverse().compose(&GaugeTransform::constant(&theta, Quat::I)).compose(&witness);
    let escapes = apply_gauge(&theta, &flat, &conj).expect("same graph").distance(&flat) > 1e-6;
    vec![
        ProbeReport::within("stabilizer.fixes_connection", worst_fix, 0.0, 1e-10),
        ProbeReport::new("normalizer.oracle_disagreements", disagreements as f64, 0.0, 0.0)
            .detail("pairs", pairs)
            .detail("members", members),
        ProbeReport::new("normalizer.trivial_connection_witness", (rejected && escapes) as u8 as f64, 1.0, 0.0)
            .detail("transform", &witness)
            .detail("conjugated_stabilizer_element_at_v", conj.get("v")),
    ]
}

/// One entry per verified claim, in a fixed order.
pub type Criterion = (&'static str, fn(&SuiteConfig) -> Vec<ProbeReport>);

pub const CRITERIA: [Criterion; 12] = [
    ("adjoint formula", adjoint_formula),
    ("centralizer classification", classifier_agreement),
    ("standard form", standard_form_invariance),
    ("generic measure", generic_measure),
    ("haar pushforward", haar_pushforward),
    ("quotient density", quotient_density),
    ("dimension table", dimension_table),
    ("codimension", codimension),
    ("minimal generators", minimal_generators),
    ("abelian triviality", abelian_triviality),
    ("gribov witness", gribov_witness),
    ("stabilizer and normalizer", stabilizer_normalizer),
];

pub fn verify_suite(cfg: &SuiteConfig) -> Vec<ProbeReport> {
    CRITERIA.iter().flat_map(|(_, run)| run(cfg)).collect()
}

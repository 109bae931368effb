//! Batch front end: census, canonical forms, gauge fixing and the
//! verification suite, with JSON (or CSV) reports.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use orbit_strata::canonical::canonicalize;
use orbit_strata::lab::{census_probes, stratum_census_in, verify_suite, ProbeReport, SuiteConfig};
use orbit_strata::lattice::{abelian_canonical, fundamental_system, reduction_map, tree_gauge, AnyConnection, Graph};
use orbit_strata::{Error, ExecMode, GroupKind, GroupTuple, Quat, Tolerance};

const STATUS_PROBE_FAILED: u8 = 1;
const STATUS_USAGE: u8 = 2;
const STATUS_DOMAIN: u8 = 3;

#[derive(Parser)]
#[command(name = "orbit-strata", version, about = "Orbit strata, gauge fixing and verification for SU(2) and U(1)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Clone)]
struct Opts {
    /// Tuple length for `census`.
    #[arg(long, global = true, default_value_t = 2)]
    k: usize,
    #[arg(long, global = true, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = GroupArg::Su2)]
    group: GroupArg,
    /// Override the zero threshold for singular values and norms.
    #[arg(long, global = true)]
    tol_null: Option<f64>,
    /// Override the pivot margin and genericity threshold.
    #[arg(long, global = true)]
    tol_generic: Option<f64>,
    /// Write the report here instead of stdout. A `.csv` suffix selects CSV
    /// for `census` and `verify`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Histogram bins for the density probe.
    #[arg(long, global = true, default_value_t = 50)]
    bins: usize,
    /// Path resolution for the section-discontinuity probe.
    #[arg(long, global = true, default_value_t = 1000)]
    steps: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Orbit-type fractions of Haar-random k-tuples.
    Census,
    /// Canonical form of a generic SU(2) tuple read from a JSON array.
    Canon { tuple: PathBuf },
    /// Tree gauge of a connection on a graph.
    Gaugefix { graph: PathBuf, connection: PathBuf },
    /// Run every verification probe.
    Verify,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum GroupArg {
    Su2,
    U1,
}

impl From<GroupArg> for GroupKind {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::Su2 => GroupKind::Su2,
            GroupArg::U1 => GroupKind::U1,
        }
    }
}

#[derive(Serialize)]
struct ResolvedConfig {
    command: &'static str,
    k: usize,
    samples: usize,
    seed: u64,
    group: GroupArg,
    tolerance: Tolerance,
    bins: usize,
    steps: usize,
    mode: ExecMode,
    inputs: Vec<PathBuf>,
}

/// Report envelope: tool version, resolved config and its hash, result.
#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    config: &'a ResolvedConfig,
    config_hash: String,
    result: T,
}

struct Failure {
    status: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { status: STATUS_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::NotGeneric(_)
            | Error::Disconnected(_)
            | Error::PathLeftGenericStratum { .. }
            | Error::WitnessVerificationFailed { .. }
            | Error::NotFound { .. } => STATUS_DOMAIN,
            _ => STATUS_USAGE,
        };
        Self { status, message: e.to_string() }
    }
}

fn tolerance(opts: &Opts) -> Result<Tolerance, Failure> {
    let mut tol = Tolerance::default();
    if let Some(v) = opts.tol_null {
        tol.eps_null = v;
    }
    if let Some(v) = opts.tol_generic {
        tol.eps_generic = v;
    }
    tol.validate()?;
    Ok(tol)
}

fn config_hash(cfg: &ResolvedConfig) -> String {
    let bytes = serde_json::to_vec(cfg).expect("config serializes");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn is_csv(out: &Option<PathBuf>) -> bool {
    out.as_ref().is_some_and(|p| p.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")))
}

/// Writes to `out` through a temporary file in the same directory, or to
/// stdout.
fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::usage(format!("cannot write report: {e}"));
    match out {
        None => std::io::stdout().write_all(bytes).map_err(io),
        Some(path) => {
            let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
            tmp.write_all(bytes).map_err(io)?;
            tmp.persist(path).map_err(|e| io(e.error))?;
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(opts: &Opts, cfg: &ResolvedConfig, result: T) -> Result<(), Failure> {
    let envelope = Envelope {
        tool: "orbit-strata",
        version: env!("CARGO_PKG_VERSION"),
        config: cfg,
        config_hash: config_hash(cfg),
        result,
    };
    let mut bytes = serde_json::to_vec_pretty(&envelope).expect("report serializes");
    bytes.push(b'\n');
    emit(&opts.out, &bytes)
}

#[derive(Serialize)]
struct ProbeRow<'a> {
    name: &'a str,
    observed: f64,
    expected: f64,
    tolerance: f64,
    pass: bool,
    version: &'static str,
    config_hash: &'a str,
}

fn emit_csv(opts: &Opts, cfg: &ResolvedConfig, probes: &[ProbeReport]) -> Result<(), Failure> {
    let hash = config_hash(cfg);
    let mut w = csv::Writer::from_writer(Vec::new());
    for p in probes {
        w.serialize(ProbeRow {
            name: &p.name,
            observed: p.observed,
            expected: p.expected,
            tolerance: p.tolerance,
            pass: p.pass,
            version: env!("CARGO_PKG_VERSION"),
            config_hash: &hash,
        })
        .map_err(|e| Failure::usage(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::usage(e.to_string()))?;
    emit(&opts.out, &bytes)
}

fn emit_probes<T: Serialize>(
    opts: &Opts,
    cfg: &ResolvedConfig,
    probes: &[ProbeReport],
    result: T,
) -> Result<u8, Failure> {
    if is_csv(&opts.out) {
        emit_csv(opts, cfg, probes)?;
    } else {
        emit_json(opts, cfg, result)?;
    }
    for p in probes.iter().filter(|p| !p.pass) {
        eprintln!("FAIL {}: observed {} expected {} ± {}", p.name, p.observed, p.expected, p.tolerance);
    }
    Ok(if probes.iter().all(|p| p.pass) { 0 } else { STATUS_PROBE_FAILED })
}

#[derive(Serialize)]
struct CensusResult<'a> {
    census: &'a orbit_strata::lab::CensusReport,
    probes: &'a [ProbeReport],
}

#[derive(Serialize)]
struct GaugefixResult {
    connection: AnyConnection,
    transform: serde_json::Value,
    loops: serde_json::Value,
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let opts = cli.opts;
    let tol = tolerance(&opts)?;
    if opts.samples == 0 || opts.bins == 0 {
        return Err(Failure::usage("--samples and --bins must be positive"));
    }
    let (name, inputs) = match &cli.command {
        Command::Census => ("census", vec![]),
        Command::Canon { tuple } => ("canon", vec![tuple.clone()]),
        Command::Gaugefix { graph, connection } => ("gaugefix", vec![graph.clone(), connection.clone()]),
        Command::Verify => ("verify", vec![]),
    };
    let cfg = ResolvedConfig {
        command: name,
        k: opts.k,
        samples: opts.samples,
        seed: opts.seed,
        group: opts.group,
        tolerance: tol,
        bins: opts.bins,
        steps: opts.steps,
        mode: ExecMode::default(),
        inputs,
    };
    if is_csv(&opts.out) && !matches!(cli.command, Command::Census | Command::Verify) {
        return Err(Failure::usage("CSV output is only available for census and verify"));
    }
    match &cli.command {
        Command::Census => {
            let report = stratum_census_in(opts.group.into(), opts.k, opts.samples, opts.seed, &tol, cfg.mode)?;
            let probes = census_probes(&report);
            emit_probes(&opts, &cfg, &probes, CensusResult { census: &report, probes: &probes })
        }
        Command::Canon { tuple } => {
            let t: GroupTuple<Quat> = read_json(tuple)?;
            let canon = canonicalize(&t, &tol)?;
            emit_json(&opts, &cfg, canon)?;
            Ok(0)
        }
        Command::Gaugefix { graph, connection } => {
            let graph: Graph = read_json(graph)?;
            let conn: AnyConnection = read_json(connection)?;
            let fs = fundamental_system(&graph)?;
            let result = match conn {
                AnyConnection::Su2(c) => {
                    c.check(&graph)?;
                    let (gauged, transform) = tree_gauge(&fs, &c)?;
                    let loops = reduction_map(&c, &fs)?;
                    GaugefixResult {
                        connection: AnyConnection::Su2(gauged),
                        transform: to_value(&transform),
                        loops: to_value(&loops),
                    }
                }
                AnyConnection::U1(c) => {
                    c.check(&graph)?;
                    let (_, transform) = tree_gauge(&fs, &c)?;
                    let loops = reduction_map(&c, &fs)?;
                    let canonical = abelian_canonical(&fs, &c)?;
                    GaugefixResult {
                        connection: AnyConnection::U1(canonical),
                        transform: to_value(&transform),
                        loops: to_value(&loops),
                    }
                }
            };
            emit_json(&opts, &cfg, result)?;
            Ok(0)
        }
        Command::Verify => {
            let suite = SuiteConfig {
                samples: opts.samples,
                seed: opts.seed,
                tol,
                mode: cfg.mode,
                bins: opts.bins,
                steps: opts.steps,
            };
            let probes = verify_suite(&suite);
            emit_probes(&opts, &cfg, &probes, &probes)
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("value serializes")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { STATUS_USAGE } else { 0 };
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(status) => ExitCode::from(status),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.status)
        }
    }
}

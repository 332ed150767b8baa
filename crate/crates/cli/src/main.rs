//! `subspace`: distances, angles and geodesics between subspaces stored
//! as JSON spanning sets, plus the worked examples and property suites.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use subspace_geometry::angle::angle;
use subspace_geometry::geodesic::path::{intrinsic_distance, minimal_geodesic, Topology};
use subspace_geometry::harness::{default_trials, run_suite, SuiteParams, SUITES};
use subspace_geometry::io::SubspaceFile;
use subspace_geometry::metrics::{asym_distance, legacy_distance, LegacyKind, MetricKind, Symmetrization};
use subspace_geometry::principal::principal_decomposition;
use subspace_geometry::worked_examples::run_worked_examples;
use subspace_geometry::{CMatrix, Error, FieldTag, Subspace, ToleranceProfile};

const DEFAULT_SEED: u64 = 20240611;
const EXAMPLE_TOL: f64 = 1e-10;

#[derive(Parser)]
#[command(name = "subspace", version, about = "Asymmetric distances, angles and geodesics between subspaces")]
struct Cli {
    /// Machine-readable output, numbers rounded to 10 significant digits.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// d(V,W), d(W,V) and their max/min symmetrizations.
    Dist {
        v: PathBuf,
        w: PathBuf,
        /// A metric such as d_FS, or "all".
        #[arg(long, default_value = "all")]
        metric: String,
        /// Also print the older distances.
        #[arg(long)]
        legacy: bool,
        /// Render angle-valued metrics (d_g, d_FS, d_A) in degrees.
        #[arg(long)]
        degrees: bool,
    },
    /// Principal angles and principal bases.
    Angles { v: PathBuf, w: PathBuf },
    /// Samples of a minimal geodesic from V to W, as JSON.
    Geodesic {
        v: PathBuf,
        w: PathBuf,
        #[arg(long, default_value = "d_g")]
        metric: String,
        #[arg(long, default_value_t = 11, value_parser = clap::value_parser!(u64).range(2..))]
        samples: u64,
        #[arg(long, value_enum, default_value_t = TopologyArg::Backward)]
        topology: TopologyArg,
    },
    /// Recompute the worked examples and compare with their closed forms.
    Examples,
    /// Run a property suite.
    Check {
        #[arg(long)]
        suite: String,
        /// Defaults to the suite's own trial count.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, env = "SUBSPACE_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        /// Force one violation, to exercise the failure path.
        #[arg(long, hide = true)]
        inject_bug: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TopologyArg {
    Backward,
    Forward,
}

impl From<TopologyArg> for Topology {
    fn from(t: TopologyArg) -> Self {
        match t {
            TopologyArg::Backward => Topology::Backward,
            TopologyArg::Forward => Topology::Forward,
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => 2,
            Error::AmbientMismatch(..) | Error::FieldMismatch(..) => 3,
            Error::UnsupportedMetric(..) => 4,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// Exit status of a command that ran to completion.
enum Status {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<Status, Failure> {
    match &cli.command {
        Command::Dist {
            v,
            w,
            metric,
            legacy,
            degrees,
        } => dist(cli.json, v, w, metric, *legacy, *degrees),
        Command::Angles { v, w } => angles(cli.json, v, w),
        Command::Geodesic {
            v,
            w,
            metric,
            samples,
            topology,
        } => geodesic(v, w, metric, *samples as usize, (*topology).into()),
        Command::Examples => examples(cli.json),
        Command::Check {
            suite,
            trials,
            seed,
            nmax,
            inject_bug,
        } => check(cli.json, suite, *trials, *seed, *nmax, *inject_bug),
    }
}

fn load_pair(v: &PathBuf, w: &PathBuf) -> Result<(Subspace, Subspace), Failure> {
    let tol = ToleranceProfile::default();
    let v = SubspaceFile::read(v)?.to_subspace(&tol)?;
    let w = SubspaceFile::read(w)?.to_subspace(&tol)?;
    v.check_compatible(&w)?;
    Ok((v, w))
}

fn parse_metric(s: &str) -> Result<MetricKind, Failure> {
    s.parse().map_err(|e: Error| usage(e.to_string()))
}

/// Rounds to 10 significant digits; non-finite values become `null`.
fn sig(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    json!(format!("{x:.9e}").parse::<f64>().unwrap_or(x))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values always serialize"));
}

fn is_angle(kind: MetricKind) -> bool {
    matches!(kind, MetricKind::Geodesic | MetricKind::FubiniStudy | MetricKind::Asimov)
}

fn dist(json: bool, v: &PathBuf, w: &PathBuf, metric: &str, legacy: bool, degrees: bool) -> Result<Status, Failure> {
    let kinds: Vec<MetricKind> = if metric.eq_ignore_ascii_case("all") {
        MetricKind::ALL.to_vec()
    } else {
        vec![parse_metric(metric)?]
    };
    let (v, w) = load_pair(v, w)?;
    let mut rows = Vec::new();
    for kind in kinds {
        let vw = asym_distance(kind, &v, &w)?;
        let wv = asym_distance(kind, &w, &v)?;
        let scale = if degrees && is_angle(kind) { 180.0 / std::f64::consts::PI } else { 1.0 };
        let vals = [
            vw,
            wv,
            Symmetrization::Max.combine(vw, wv)?,
            Symmetrization::Min.combine(vw, wv)?,
        ]
        .map(|x| x * scale);
        rows.push((kind.symbol(), vals));
    }
    let mut legacy_rows = Vec::new();
    if legacy {
        for kind in LegacyKind::ALL {
            legacy_rows.push((kind.symbol(), legacy_distance(kind, &v, &w)?, legacy_distance(kind, &w, &v)?));
        }
    }
    if json {
        let metrics: Vec<Value> = rows
            .iter()
            .map(|(name, [a, b, mx, mn])| {
                json!({"metric": name, "d_vw": sig(*a), "d_wv": sig(*b), "max": sig(*mx), "min": sig(*mn)})
            })
            .collect();
        let mut out = json!({"degrees": degrees, "metrics": metrics});
        if legacy {
            out["legacy"] = legacy_rows
                .iter()
                .map(|(name, a, b)| json!({"distance": name, "d_vw": sig(*a), "d_wv": sig(*b)}))
                .collect();
        }
        print_json(&out);
    } else {
        println!("{:<8} {:>20} {:>10} {:>10}", "metric", "d(V,W) / d(W,V)", "max", "min");
        for (name, [a, b, mx, mn]) in &rows {
            println!("{name:<8} {:>20} {mx:>10.4} {mn:>10.4}", format!("{a:.4} / {b:.4}"));
        }
        if legacy {
            println!();
            println!("{:<11} {:>10} {:>10}", "legacy", "d(V,W)", "d(W,V)");
            for (name, a, b) in &legacy_rows {
                println!("{name:<11} {a:>10.4} {b:>10.4}");
            }
        }
    }
    Ok(Status::Ok)
}

fn basis_json(m: &CMatrix, field: FieldTag) -> Value {
    m.column_iter()
        .map(|col| {
            col.iter()
                .map(|z| match field {
                    FieldTag::Real => sig(z.re),
                    FieldTag::Complex => json!([sig(z.re), sig(z.im)]),
                })
                .collect::<Value>()
        })
        .collect()
}

fn basis_text(m: &CMatrix, field: FieldTag) -> Vec<String> {
    m.column_iter()
        .map(|col| {
            let entries: Vec<String> = col
                .iter()
                .map(|z| match field {
                    FieldTag::Real => format!("{:.6}", z.re),
                    FieldTag::Complex => format!("{:.6}{:+.6}i", z.re, z.im),
                })
                .collect();
            format!("[{}]", entries.join(", "))
        })
        .collect()
}

fn angles(json: bool, v: &PathBuf, w: &PathBuf) -> Result<Status, Failure> {
    let (v, w) = load_pair(v, w)?;
    let pd = principal_decomposition(&v, &w)?;
    let rad = pd.angles();
    let deg: Vec<f64> = rad.iter().map(|t| t.to_degrees()).collect();
    let theta_vw = angle(&v, &w)?.theta;
    let theta_wv = angle(&w, &v)?.theta;
    let m = pd.m();
    let e = pd.e_basis().columns(0, m).into_owned();
    let f = pd.f_basis().columns(0, m).into_owned();
    if json {
        print_json(&json!({
            "radians": rad.iter().map(|&t| sig(t)).collect::<Value>(),
            "degrees": deg.iter().map(|&t| sig(t)).collect::<Value>(),
            "theta_vw": sig(theta_vw),
            "theta_wv": sig(theta_wv),
            "v_basis": basis_json(&e, v.field()),
            "w_basis": basis_json(&f, w.field()),
        }));
    } else {
        let join = |xs: &[f64], prec: usize| xs.iter().map(|x| format!("{x:.prec$}")).collect::<Vec<_>>().join(" ");
        println!("radians {}", join(rad, 10));
        println!("degrees {}", join(&deg, 4));
        println!("Theta(V,W) {theta_vw:.10} rad {:.4} deg", theta_vw.to_degrees());
        println!("Theta(W,V) {theta_wv:.10} rad {:.4} deg", theta_wv.to_degrees());
        for (i, (a, b)) in basis_text(&e, v.field()).iter().zip(basis_text(&f, w.field())).enumerate() {
            println!("pair {} e {a} f {b}", i + 1);
        }
    }
    Ok(Status::Ok)
}

fn geodesic(v: &PathBuf, w: &PathBuf, metric: &str, samples: usize, topology: Topology) -> Result<Status, Failure> {
    let kind = parse_metric(metric)?;
    let (v, w) = load_pair(v, w)?;
    let path = minimal_geodesic(kind, &v, &w, topology)?;
    let length = intrinsic_distance(kind, &v, &w)?;
    let points: Vec<Value> = path
        .sample(samples)?
        .iter()
        .map(|(t, s)| json!({"t": sig(*t), "dim": s.dim(), "basis": basis_json(s.basis(), s.field())}))
        .collect();
    let topology = match topology {
        Topology::Backward => "backward",
        Topology::Forward => "forward",
    };
    print_json(&json!({
        "metric": kind.symbol(),
        "topology": topology,
        "type": path.kind().tag(),
        "length": sig(length),
        "samples": points,
    }));
    Ok(Status::Ok)
}

fn examples(json: bool) -> Result<Status, Failure> {
    let checks = run_worked_examples(EXAMPLE_TOL)?;
    let all = checks.iter().all(|c| c.pass);
    if json {
        let rows: Vec<Value> = checks
            .iter()
            .map(|c| {
                json!({
                    "example": c.example,
                    "quantity": c.quantity,
                    "computed": sig(c.computed),
                    "expected": sig(c.expected),
                    "exact": c.exact,
                    "pass": c.pass,
                })
            })
            .collect();
        print_json(&json!({"tolerance": EXAMPLE_TOL, "pass": all, "checks": rows}));
    } else {
        let mut current = "";
        for c in &checks {
            if c.example != current {
                current = c.example;
                println!("{current}");
            }
            println!(
                "  {} {:<44} {:>20.15} {:>20.15}",
                if c.pass { "PASS" } else { "FAIL" },
                c.quantity,
                c.computed,
                c.expected
            );
        }
        println!("{} of {} checks pass", checks.iter().filter(|c| c.pass).count(), checks.len());
    }
    Ok(if all { Status::Ok } else { Status::Failed })
}

fn check(json: bool, suite: &str, trials: Option<usize>, seed: u64, nmax: usize, inject_bug: bool) -> Result<Status, Failure> {
    if !SUITES.contains(&suite) {
        return Err(usage(format!("unknown suite '{suite}'; known suites: {}", SUITES.join(", "))));
    }
    if nmax == 0 {
        return Err(usage("--nmax must be at least 1"));
    }
    let mut params = SuiteParams::new(seed, trials.unwrap_or_else(|| default_trials(suite)), nmax);
    params.inject_bug = inject_bug;
    let report = run_suite(suite, &params)?;
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    Ok(if report.pass { Status::Ok } else { Status::Failed })
}

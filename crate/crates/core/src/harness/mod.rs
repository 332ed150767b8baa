//! Randomized property suites.
//!
//! A suite draws seeded random inputs, evaluates a list of [`Check`]s on
//! each trial and collects violations. Every violation carries a
//! [`Fixture`]: the exact input bases, so that [`Fixture::replay`]
//! reproduces the outcome bit for bit. Trials run in parallel; each trial
//! has its own random stream, so results do not depend on scheduling.

pub mod checks;
pub mod random;
mod suites;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};
use crate::subspace::{FieldTag, Subspace};

pub use checks::{evaluate, Check, EqualityKind, Outcome};

pub const SUITES: [&str; 13] = [
    "triangle",
    "t0",
    "monotonicity",
    "duality",
    "chainB1",
    "chainB2",
    "interlacing",
    "route-agreement",
    "geodesic-length",
    "between-dg",
    "between-dfs",
    "bc-decomposition",
    "nonmetric-demos",
];

/// Trial count used when none is given.
pub fn default_trials(suite: &str) -> usize {
    match suite {
        "triangle" => 10_000,
        "interlacing" => 500,
        "geodesic-length" => 100,
        "nonmetric-demos" => 200,
        _ => 1000,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteParams {
    pub seed: u64,
    pub trials: usize,
    pub n_max: usize,
    /// Forces a violation on the first check of trial 0.
    pub inject_bug: bool,
}

impl SuiteParams {
    pub fn new(seed: u64, trials: usize, n_max: usize) -> Self {
        SuiteParams {
            seed,
            trials,
            n_max,
            inject_bug: false,
        }
    }
}

/// Column-major matrix of `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StoredMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

impl StoredMatrix {
    pub fn from_matrix(m: &CMatrix) -> Self {
        StoredMatrix {
            rows: m.nrows(),
            cols: m.ncols(),
            entries: m.iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        if self.entries.len() != self.rows * self.cols {
            return Err(Error::Parse(format!(
                "{} entries for a {}x{} matrix",
                self.entries.len(),
                self.rows,
                self.cols
            )));
        }
        Ok(CMatrix::from_iterator(
            self.rows,
            self.cols,
            self.entries.iter().map(|&[re, im]| C64::new(re, im)),
        ))
    }
}

/// A self-contained input for one check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub suite: String,
    pub trial: u64,
    pub check: Check,
    pub field: FieldTag,
    /// Orthonormal bases, used verbatim.
    pub subspaces: Vec<StoredMatrix>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub matrices: Vec<StoredMatrix>,
    #[serde(default)]
    pub injected: bool,
}

impl Fixture {
    pub fn subspaces(&self) -> Result<Vec<Subspace>> {
        self.subspaces
            .iter()
            .map(|m| Subspace::from_orthonormal(m.to_matrix()?, self.field))
            .collect()
    }

    pub fn replay(&self) -> Result<Outcome> {
        let subs = self.subspaces()?;
        let mats = self.matrices.iter().map(StoredMatrix::to_matrix).collect::<Result<Vec<_>>>()?;
        evaluate(&self.check, &subs, &mats, self.injected)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data always serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub trial: u64,
    pub check: String,
    pub slack: f64,
    pub detail: String,
    pub fixture: Fixture,
}

/// A counterexample the suite has to find, with what was found.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Requirement {
    pub description: String,
    pub found: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub n_max: usize,
    pub checks: u64,
    /// Largest slack among checks that are required to hold.
    pub max_slack: f64,
    pub violations: Vec<Finding>,
    /// Failures of properties that are not expected to hold (non-metric
    /// distances, duality of l² metrics). At most a few per check label
    /// are kept, largest slack first.
    pub counterexamples: Vec<Finding>,
    pub counterexample_count: u64,
    pub requirements: Vec<Requirement>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data always serializes")
    }

    /// Line-oriented `key value` rendering; findings end with their
    /// fixture as one line of JSON.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "suite {}", self.suite);
        let _ = writeln!(s, "seed {}", self.seed);
        let _ = writeln!(s, "trials {}", self.trials);
        let _ = writeln!(s, "n_max {}", self.n_max);
        let _ = writeln!(s, "checks {}", self.checks);
        let _ = writeln!(s, "max_slack {:e}", self.max_slack);
        let _ = writeln!(s, "violations {}", self.violations.len());
        let _ = writeln!(s, "counterexamples {}", self.counterexample_count);
        for r in &self.requirements {
            let _ = writeln!(s, "required {} {}", if r.found { "found" } else { "missing" }, r.description);
        }
        for (tag, list) in [("violation", &self.violations), ("counterexample", &self.counterexamples)] {
            for f in list {
                let _ = writeln!(
                    s,
                    "{tag} trial={} check=\"{}\" slack={:e} detail=\"{}\" fixture={}",
                    f.trial,
                    f.check,
                    f.slack,
                    f.detail,
                    f.fixture.to_json()
                );
            }
        }
        let _ = writeln!(s, "result {}", if self.pass { "PASS" } else { "FAIL" });
        s
    }
}

/// Whether a check is a property the suite asserts, or a search for
/// counterexamples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Expect {
    Holds,
    Search,
}

/// One check on one generated input.
pub(crate) struct Case {
    pub check: Check,
    pub subs: Vec<Subspace>,
    pub mats: Vec<CMatrix>,
    pub expect: Expect,
}

impl Case {
    pub fn holds(check: Check, subs: Vec<Subspace>) -> Self {
        Case {
            check,
            subs,
            mats: Vec::new(),
            expect: Expect::Holds,
        }
    }

    pub fn search(check: Check, subs: Vec<Subspace>) -> Self {
        Case {
            check,
            subs,
            mats: Vec::new(),
            expect: Expect::Search,
        }
    }
}

const KEPT_PER_LABEL: usize = 5;

struct TrialResult {
    checks: u64,
    max_slack: f64,
    violations: Vec<Finding>,
    counterexamples: Vec<Finding>,
}

fn finding(suite: &str, trial: u64, case: &Case, out: &Outcome, injected: bool) -> Finding {
    let field = case.subs.first().map_or(FieldTag::Real, |s| s.field());
    Finding {
        trial,
        check: case.check.to_string(),
        slack: out.slack,
        detail: out.detail.clone(),
        fixture: Fixture {
            suite: suite.to_string(),
            trial,
            check: case.check,
            field,
            subspaces: case.subs.iter().map(|s| StoredMatrix::from_matrix(s.basis())).collect(),
            matrices: case.mats.iter().map(StoredMatrix::from_matrix).collect(),
            injected,
        },
    }
}

fn run_trial(suite: &str, params: &SuiteParams, trial: u64) -> Result<TrialResult> {
    let mut rng = random::rng_for(params.seed, trial);
    let cases = suites::generate(suite, &mut rng, trial, params.n_max)?;
    let mut res = TrialResult {
        checks: 0,
        max_slack: f64::NEG_INFINITY,
        violations: Vec::new(),
        counterexamples: Vec::new(),
    };
    let inject_at = (params.inject_bug && trial == 0)
        .then(|| cases.iter().position(|c| c.expect == Expect::Holds))
        .flatten();
    for (i, case) in cases.iter().enumerate() {
        let injected = inject_at == Some(i);
        res.checks += 1;
        let out = match evaluate(&case.check, &case.subs, &case.mats, injected) {
            Ok(out) => out,
            Err(e) => Outcome {
                slack: f64::NAN,
                violated: true,
                detail: format!("error: {e}"),
            },
        };
        match case.expect {
            Expect::Holds => {
                res.max_slack = res.max_slack.max(out.slack);
                if out.violated {
                    res.violations.push(finding(suite, trial, case, &out, injected));
                }
            }
            Expect::Search => {
                if out.violated {
                    res.counterexamples.push(finding(suite, trial, case, &out, injected));
                }
            }
        }
    }
    Ok(res)
}

/// Runs the named suite. Fails only on an unknown name or invalid
/// parameters; property failures are reported in the [`SuiteReport`].
pub fn run_suite(name: &str, params: &SuiteParams) -> Result<SuiteReport> {
    if !SUITES.contains(&name) {
        return Err(Error::InvalidArgument(format!(
            "unknown suite '{name}'; known suites: {}",
            SUITES.join(", ")
        )));
    }
    if params.n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let results = (0..params.trials as u64)
        .into_par_iter()
        .map(|t| run_trial(name, params, t))
        .collect::<Result<Vec<_>>>()?;

    let mut checks = 0;
    let mut max_slack = f64::NEG_INFINITY;
    let mut violations = Vec::new();
    let mut found = Vec::new();
    for r in results {
        checks += r.checks;
        max_slack = max_slack.max(r.max_slack);
        violations.extend(r.violations);
        found.extend(r.counterexamples);
    }
    violations.sort_by_key(|f: &Finding| f.trial);
    let requirements = suites::requirements(name, &found);
    let counterexample_count = found.len() as u64;
    let counterexamples = keep_largest(found);
    let pass = violations.is_empty() && requirements.iter().all(|r| r.found);
    Ok(SuiteReport {
        suite: name.to_string(),
        seed: params.seed,
        trials: params.trials,
        n_max: params.n_max,
        checks,
        max_slack,
        violations,
        counterexamples,
        counterexample_count,
        requirements,
        pass,
    })
}

fn keep_largest(found: Vec<Finding>) -> Vec<Finding> {
    let mut by_label: BTreeMap<String, Vec<Finding>> = BTreeMap::new();
    for f in found {
        by_label.entry(f.check.clone()).or_default().push(f);
    }
    let mut kept = Vec::new();
    for (_, mut list) in by_label {
        list.sort_by(|a, b| b.slack.total_cmp(&a.slack).then(a.trial.cmp(&b.trial)));
        list.truncate(KEPT_PER_LABEL);
        kept.extend(list);
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(run_suite("nope", &SuiteParams::new(1, 1, 4)).is_err());
    }

    #[test]
    fn every_suite_runs_briefly() {
        for name in SUITES {
            let report = run_suite(name, &SuiteParams::new(7, 3, 5)).unwrap();
            assert!(report.checks > 0, "{name}");
            assert!(report.violations.is_empty(), "{name}: {}", report.to_text());
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let a = run_suite("duality", &SuiteParams::new(11, 20, 5)).unwrap();
        let b = run_suite("duality", &SuiteParams::new(11, 20, 5)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn injected_violation_replays_bit_exactly() {
        let mut params = SuiteParams::new(3, 4, 6);
        params.inject_bug = true;
        let report = run_suite("triangle", &params).unwrap();
        assert!(!report.pass);
        assert_eq!(report.violations.len(), 1);
        let v = &report.violations[0];
        let fixture = Fixture::from_json(&v.fixture.to_json()).unwrap();
        let out = fixture.replay().unwrap();
        assert!(out.violated);
        assert_eq!(out.slack.to_bits(), v.slack.to_bits());
    }

    #[test]
    fn counterexamples_replay_bit_exactly() {
        let report = run_suite("nonmetric-demos", &SuiteParams::new(5, 10, 6)).unwrap();
        assert!(report.pass, "{}", report.to_text());
        for f in &report.counterexamples {
            let fixture = Fixture::from_json(&f.fixture.to_json()).unwrap();
            assert_eq!(fixture.replay().unwrap().slack.to_bits(), f.slack.to_bits());
        }
    }
}

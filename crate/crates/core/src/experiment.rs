//! Report envelopes, size multisets and parameter sweeps.
//!
//! A sweep spec is a JSON document:
//!
//! ```text
//! {
//!   "command": "construct" | "verify" | "attack" | "bounds" | "sc-verify" | "sc-analyze",
//!   "grid": {"n": [..], "k": [..], "sizes": ["15x15*15", ..], "seeds": [..],
//!            "families": ["f.json", ..], "layered": ["g.json", ..]},
//!   "outputs": {"csv": "out.csv", "json": "out.json"},
//!   "budgets": {"witness_nodes": int, "pairs": int, "max_attempts": int},
//!   "options": {"trials": int, "mode": "symmetric", "certificate": "exact",
//!               "theorem": 7, "constant": 1.0, "samples": int, "k_values": [..]}
//! }
//! ```
//!
//! Grid points are the product of the family sources (`families`, or
//! `n × k × sizes`) or `layered` files with `seeds`, in that nesting order.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::attack::{run_attack, AttackConfig, AttackMode};
use crate::bounds::{BoundReport, Constants};
use crate::construct::{certify_union_bound, construct_until_verified, random_family, CertificateMode, ConstructError};
use crate::error::{Error, Result};
use crate::graph::{union_of, BicliqueFamily, LayeredGraph};
use crate::io::{load_family, load_layered, parse_json, read_text, to_json};
use crate::rng::RandomSource;
use crate::superconc::{
    edge_lower_bound_audit, tradeoff_audit, verify_superconcentrator, KSelection, VerifyMode, DEFAULT_PAIR_BUDGET,
};
use crate::witness::{has_kxk_independent_set, WitnessConfig, DEFAULT_NODE_BUDGET};

pub const TOOL: &str = "zarank";

/// Wrapper written around every report.
#[derive(Clone, Debug, Serialize)]
pub struct Envelope<'a, P: Serialize, R: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub parameters: &'a P,
    pub result: &'a R,
}

pub fn envelope_json<P: Serialize, R: Serialize>(command: &str, parameters: &P, result: &R) -> String {
    to_json(&Envelope {
        tool: TOOL,
        version: crate::VERSION,
        command,
        parameters,
        result,
    })
}

/// Parses `"AxB*C, D, ..."`: `C` copies of an `A×B` biclique; a bare `D` is `D×D`.
pub fn parse_sizes(text: &str) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let bad = || Error::param(format!("bad size item {item:?}; expected AxB, AxB*C or A"));
        let (shape, copies) = match item.split_once('*') {
            Some((shape, c)) => (shape, c.trim().parse::<usize>().map_err(|_| bad())?),
            None => (item, 1),
        };
        let (a, b) = match shape.split_once(['x', 'X']) {
            Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
            None => {
                let a = shape.trim().parse().map_err(|_| bad())?;
                (a, a)
            }
        };
        out.extend(std::iter::repeat_n((a, b), copies));
    }
    Ok(out)
}

/// Inverse of [`parse_sizes`], run-length encoded.
pub fn format_sizes(sizes: &[(usize, usize)]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < sizes.len() {
        let mut j = i;
        while j < sizes.len() && sizes[j] == sizes[i] {
            j += 1;
        }
        let (a, b) = sizes[i];
        parts.push(if j - i == 1 { format!("{a}x{b}") } else { format!("{a}x{b}*{}", j - i) });
        i = j;
    }
    parts.join(",")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepCommand {
    Construct,
    Verify,
    Attack,
    Bounds,
    ScVerify,
    ScAnalyze,
    Sweep,
}

impl SweepCommand {
    pub fn name(self) -> &'static str {
        match self {
            SweepCommand::Construct => "construct",
            SweepCommand::Verify => "verify",
            SweepCommand::Attack => "attack",
            SweepCommand::Bounds => "bounds",
            SweepCommand::ScVerify => "sc-verify",
            SweepCommand::ScAnalyze => "sc-analyze",
            SweepCommand::Sweep => "sweep",
        }
    }

    fn layered(self) -> bool {
        matches!(self, SweepCommand::ScVerify | SweepCommand::ScAnalyze)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    #[serde(default)]
    pub n: Vec<usize>,
    #[serde(default)]
    pub k: Vec<usize>,
    #[serde(default)]
    pub sizes: Vec<String>,
    #[serde(default)]
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub families: Vec<PathBuf>,
    #[serde(default)]
    pub layered: Vec<PathBuf>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    pub csv: Option<PathBuf>,
    pub json: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Budgets {
    pub witness_nodes: Option<u64>,
    pub pairs: Option<u64>,
    pub max_attempts: Option<usize>,
}

impl Budgets {
    pub fn witness(&self) -> WitnessConfig {
        WitnessConfig::with_budget(self.witness_nodes.unwrap_or(DEFAULT_NODE_BUDGET))
    }
}

fn default_trials() -> usize {
    200
}
fn default_mode() -> AttackMode {
    AttackMode::Symmetric
}
fn default_certificate() -> CertificateMode {
    CertificateMode::Exact
}
fn default_theorem() -> u8 {
    7
}
fn default_constant() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_mode")]
    pub mode: AttackMode,
    #[serde(default = "default_certificate")]
    pub certificate: CertificateMode,
    #[serde(default = "default_theorem")]
    pub theorem: u8,
    #[serde(default = "default_constant")]
    pub constant: f64,
    /// Sampled superconcentrator check with this many pairs per `k`.
    pub samples: Option<u64>,
    pub k_values: Option<Vec<usize>>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            trials: default_trials(),
            mode: default_mode(),
            certificate: default_certificate(),
            theorem: default_theorem(),
            constant: default_constant(),
            samples: None,
            k_values: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub command: SweepCommand,
    pub grid: Grid,
    #[serde(default)]
    pub outputs: Outputs,
    #[serde(default)]
    pub budgets: Budgets,
    #[serde(default)]
    pub options: Options,
}

fn invalid(path: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.into(),
        message: message.into(),
    }
}

impl ExperimentSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ExperimentSpec = parse_json(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        ExperimentSpec::from_json(&read_text(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let g = &self.grid;
        if self.command == SweepCommand::Sweep {
            return Err(invalid("command", "a sweep cannot run another sweep"));
        }
        if g.seeds.is_empty() {
            return Err(invalid("grid.seeds", "every grid point needs a seed; list at least one"));
        }
        if self.command.layered() {
            if g.layered.is_empty() {
                return Err(invalid("grid.layered", format!("{} needs layered graph files", self.command.name())));
            }
            if !matches!(self.options.theorem, 7 | 8) {
                return Err(invalid("options.theorem", "must be 7 or 8"));
            }
        } else if g.families.is_empty() {
            for (field, empty) in [("grid.n", g.n.is_empty()), ("grid.k", g.k.is_empty()), ("grid.sizes", g.sizes.is_empty())] {
                if empty {
                    return Err(invalid(field, "needed unless grid.families is given"));
                }
            }
            for (i, s) in g.sizes.iter().enumerate() {
                parse_sizes(s).map_err(|e| invalid(&format!("grid.sizes[{i}]"), e.to_string()))?;
            }
            for (i, &k) in g.k.iter().enumerate() {
                if k == 0 {
                    return Err(invalid(&format!("grid.k[{i}]"), "k must be at least 1"));
                }
            }
        }
        if self.options.trials == 0 {
            return Err(invalid("options.trials", "must be at least 1"));
        }
        if self.options.samples == Some(0) {
            return Err(invalid("options.samples", "must be at least 1"));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<GridPoint> {
        let g = &self.grid;
        let mut sources = Vec::new();
        if self.command.layered() {
            sources.extend(g.layered.iter().cloned().map(Source::Layered));
        } else if !g.families.is_empty() {
            sources.extend(g.families.iter().cloned().map(Source::Family));
        } else {
            for &n in &g.n {
                for &k in &g.k {
                    for s in &g.sizes {
                        sources.push(Source::Random { n, k, sizes: s.clone() });
                    }
                }
            }
        }
        let mut points = Vec::new();
        for source in sources {
            for &seed in &g.seeds {
                points.push(GridPoint {
                    index: points.len(),
                    source: source.clone(),
                    seed,
                });
            }
        }
        points
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Random { n: usize, k: usize, sizes: String },
    Family(PathBuf),
    Layered(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPoint {
    pub index: usize,
    pub source: Source,
    pub seed: u64,
}

impl GridPoint {
    fn columns(&self) -> Vec<(String, String)> {
        let (n, k, sizes, file) = match &self.source {
            Source::Random { n, k, sizes } => (n.to_string(), k.to_string(), sizes.clone(), String::new()),
            Source::Family(p) | Source::Layered(p) => (String::new(), String::new(), String::new(), p.display().to_string()),
        };
        vec![
            ("index".into(), self.index.to_string()),
            ("n".into(), n),
            ("k".into(), k),
            ("sizes".into(), sizes),
            ("file".into(), file),
            ("seed".into(), self.seed.to_string()),
        ]
    }
}

/// Outcome of one grid point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointResult {
    pub point: GridPoint,
    /// A `k×k` witness or superconcentrator counterexample was found.
    pub refutation: bool,
    /// Full report.
    pub report: Value,
    /// Compact fields flattened into the CSV row.
    #[serde(skip)]
    pub row: Value,
}

fn value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn point_family(point: &GridPoint) -> Result<BicliqueFamily> {
    match &point.source {
        Source::Random { n, k, sizes } => random_family(*n, *k, &parse_sizes(sizes)?, &RandomSource::new(point.seed)),
        Source::Family(p) => load_family(p),
        Source::Layered(_) => Err(Error::param("this command needs a biclique family")),
    }
}

fn point_layered(point: &GridPoint) -> Result<LayeredGraph> {
    match &point.source {
        Source::Layered(p) => load_layered(p),
        _ => Err(Error::param("this command needs a layered graph")),
    }
}

/// Runs one grid point. Randomness depends only on the point's seed.
pub fn run_point(spec: &ExperimentSpec, point: &GridPoint) -> Result<PointResult> {
    let opts = &spec.options;
    let source = RandomSource::new(point.seed);
    let witness = spec.budgets.witness();
    let (refutation, report, row) = match spec.command {
        SweepCommand::Bounds => {
            let r = BoundReport::evaluate(&point_family(point)?, Constants::default());
            (false, value(&r), value(&r))
        }
        SweepCommand::Verify => {
            let family = point_family(point)?;
            let r = has_kxk_independent_set(&union_of(&family), family.k(), &witness)?;
            (r.found, value(&r), value(&r))
        }
        SweepCommand::Construct => {
            let Source::Random { n, k, sizes } = &point.source else {
                return Err(Error::param("construct needs grid.n, grid.k and grid.sizes"));
            };
            let sizes = parse_sizes(sizes)?;
            let cert = certify_union_bound(*n, *k, &sizes, opts.certificate)?;
            let attempts = spec.budgets.max_attempts.unwrap_or(3);
            let outcome = construct_report(*n, *k, &sizes, &source, attempts, &witness)?;
            let exhausted = outcome.status == "exhausted";
            let row = serde_json::json!({
                "log2_failure_bound": value(&cert).get("log2_failure_bound").cloned(),
                "certified": cert.certified,
                "status": outcome.status,
                "attempts": outcome.attempts,
                "verdict": value(&outcome.verification.verdict()),
                "nodes_explored": outcome.verification.nodes_explored,
            });
            let report = serde_json::json!({"certificate": cert, "construction": outcome});
            (exhausted, report, row)
        }
        SweepCommand::Attack => {
            let family = point_family(point)?;
            let mut cfg = AttackConfig::new(opts.mode, opts.trials, source);
            cfg.witness = witness;
            let r = run_attack(&family, &cfg)?;
            let row = serde_json::json!({
                "mode": r.plan.mode,
                "attacked": r.plan.attacked.len(),
                "kept": r.plan.kept.len(),
                "d": r.plan.d,
                "expected_kept_edges": r.plan.expected_kept_edges,
                "trials_run": r.trials_run,
                "success_trial": r.success_trial,
                "x_surv": r.trace.x_surv.len(),
                "y_surv": r.trace.y_surv.len(),
                "witness_s": r.trace.witness.as_ref().map(|w| w.s.clone()),
                "witness_t": r.trace.witness.as_ref().map(|w| w.t.clone()),
                "summary": r.summary,
            });
            (r.success_trial.is_some(), value(&r), row)
        }
        SweepCommand::ScVerify => {
            let g = point_layered(point)?;
            let ks = opts.k_values.clone().map_or(KSelection::All, KSelection::List);
            let mode = match opts.samples {
                Some(samples) => VerifyMode::Sampled { samples, source },
                None => VerifyMode::Exhaustive {
                    budget: spec.budgets.pairs.unwrap_or(DEFAULT_PAIR_BUDGET),
                },
            };
            let v = verify_superconcentrator(&g, &ks, mode)?;
            (v.failing.is_some(), value(&v), value(&v))
        }
        SweepCommand::ScAnalyze => {
            let g = point_layered(point)?;
            let r = if opts.theorem == 7 {
                value(&edge_lower_bound_audit(&g, opts.constant)?)
            } else {
                value(&tradeoff_audit(&g, opts.constant, false)?)
            };
            (false, r.clone(), r)
        }
        SweepCommand::Sweep => return Err(Error::param("a sweep cannot run another sweep")),
    };
    Ok(PointResult {
        point: point.clone(),
        refutation,
        report,
        row,
    })
}

/// Construction outcome as reported by the CLI and sweeps.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstructOutcome {
    /// `verified`, `unverified` or `exhausted`.
    pub status: &'static str,
    pub attempts: usize,
    pub verification: crate::witness::WitnessResult,
    pub family: crate::io::FamilyDoc,
}

pub fn construct_report(
    n: usize,
    k: usize,
    sizes: &[(usize, usize)],
    source: &RandomSource,
    max_attempts: usize,
    witness: &WitnessConfig,
) -> Result<ConstructOutcome> {
    use crate::construct::ConstructionStatus;
    match construct_until_verified(n, k, sizes, source, max_attempts, witness) {
        Ok(c) => Ok(ConstructOutcome {
            status: match c.status {
                ConstructionStatus::Verified => "verified",
                ConstructionStatus::Unverified => "unverified",
            },
            attempts: c.attempts,
            verification: c.verification,
            family: crate::io::FamilyDoc::from_family(&c.family),
        }),
        Err(ConstructError::Exhausted { attempts, family, witness }) => Ok(ConstructOutcome {
            status: "exhausted",
            attempts,
            verification: *witness,
            family: crate::io::FamilyDoc::from_family(&family),
        }),
        Err(ConstructError::Invalid(e)) => Err(e),
    }
}

/// Runs every grid point on the current rayon pool; results follow grid order.
pub fn run_sweep(spec: &ExperimentSpec) -> Result<Vec<PointResult>> {
    spec.validate()?;
    spec.points()
        .par_iter()
        .map(|p| run_point(spec, p).map_err(|e| Error::param(format!("grid point {}: {e}", p.index))))
        .collect()
}

/// Flattens nested objects to dotted keys; arrays become compact JSON strings.
pub fn flatten(value: &Value) -> Vec<(String, String)> {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(map) => {
                for (key, inner) in map {
                    let name = if prefix.is_empty() { key.clone() } else { format!("{prefix}.{key}") };
                    walk(&name, inner, out);
                }
            }
            Value::Null => out.push((prefix.into(), String::new())),
            Value::String(s) => out.push((prefix.into(), s.clone())),
            other => out.push((prefix.into(), other.to_string())),
        }
    }
    let mut out = Vec::new();
    walk("", value, &mut out);
    out
}

/// CSV with one row per grid point. The header is the union of every row's
/// columns in first-seen order; absent cells are empty.
pub fn sweep_csv(command: SweepCommand, results: &[PointResult]) -> Result<String> {
    let rows: Vec<Vec<(String, String)>> = results
        .iter()
        .map(|r| {
            let mut cols = r.point.columns();
            cols.push(("command".into(), command.name().into()));
            cols.push(("refutation".into(), r.refutation.to_string()));
            cols.extend(flatten(&r.row));
            cols
        })
        .collect();
    let mut header: Vec<String> = Vec::new();
    for row in &rows {
        for (key, _) in row {
            if !header.contains(key) {
                header.push(key.clone());
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| Error::param(format!("csv: {e}"));
    w.write_record(&header).map_err(fail)?;
    for row in &rows {
        let cells = header.iter().map(|h| {
            row.iter()
                .find(|(k, _)| k == h)
                .map_or(String::new(), |(_, v)| v.clone())
        });
        w.write_record(cells).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::param(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 cells"))
}

pub fn sweep_json(spec: &ExperimentSpec, results: &[PointResult]) -> String {
    envelope_json("sweep", spec, &results)
}

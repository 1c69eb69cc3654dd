//! `zarank` command-line interface.
//!
//! Exit codes: 0 completed, 1 completed with a refutation (a `k×k` witness or a
//! superconcentrator counterexample), 2 usage or validation error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use zarank::attack::{run_attack, AttackConfig, AttackMode, Threshold, Truncation};
use zarank::bounds::{BoundReport, Constants};
use zarank::construct::{certify_union_bound, CertificateMode};
use zarank::experiment::{construct_report, envelope_json, parse_sizes, run_sweep, sweep_csv, sweep_json, ExperimentSpec};
use zarank::io::{load_family, load_graph, load_layered, write_text};
use zarank::superconc::{
    edge_lower_bound_audit, tradeoff_audit, verify_superconcentrator, KSelection, VerifyMode, DEFAULT_PAIR_BUDGET,
};
use zarank::witness::{has_kxk_independent_set, Method, WitnessConfig, DEFAULT_NODE_BUDGET};
use zarank::{union_of, Error, RandomSource};

#[derive(Parser)]
#[command(name = "zarank", version, about = "Biclique unions without k x k bipartite independent sets")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "ZARANK_JOBS")]
    jobs: Option<usize>,
    /// Overwrite existing output files.
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every size condition on a stored family.
    Bounds(BoundsArgs),
    /// Certify sizes and draw families until one is verified.
    Construct(ConstructArgs),
    /// Search a family or graph for a k x k independent set.
    Verify(VerifyArgs),
    /// Run the random side-deletion refuter.
    Attack(AttackArgs),
    /// Check the depth-two superconcentrator property.
    ScVerify(ScVerifyArgs),
    /// Degree-class audits of a layered graph.
    ScAnalyze(ScAnalyzeArgs),
    /// Run a parameter sweep from a JSON spec.
    Sweep(SweepArgs),
}

#[derive(Args, Serialize)]
struct BoundsArgs {
    #[arg(long)]
    family: PathBuf,
    #[arg(long = "const-a", default_value_t = 2.0)]
    a: f64,
    #[arg(long = "const-b", default_value_t = 0.01)]
    b: f64,
    #[arg(long = "const-c", default_value_t = 2.0)]
    c: f64,
    #[arg(long = "const-d", default_value_t = 0.01)]
    d: f64,
    /// Write the JSON report here and print a table instead.
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum CertArg {
    Exact,
    Relaxed,
}

#[derive(Args, Serialize)]
struct ConstructArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Biclique sizes, e.g. "15x15*15,8x8".
    #[arg(long)]
    sizes: String,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    max_attempts: usize,
    #[arg(long, value_enum, default_value = "exact")]
    certificate: CertArg,
    #[arg(long, env = "ZARANK_WITNESS_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
    witness_budget: u64,
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
    /// Also write the final family document here.
    #[arg(long)]
    #[serde(skip)]
    family_out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum MethodArg {
    BranchBound,
    Exhaustive,
}

#[derive(Args, Serialize)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["family", "graph"]))]
struct VerifyArgs {
    #[arg(long)]
    family: Option<PathBuf>,
    /// A plain bipartite graph document; needs --k.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Overrides the family's k.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value = "branch-bound")]
    method: MethodArg,
    #[arg(long, env = "ZARANK_WITNESS_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
    witness_budget: u64,
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ModeArg {
    Symmetric,
    Asymmetric,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum TruncationArg {
    Exact,
    None,
}

#[derive(Args, Serialize)]
struct AttackArgs {
    #[arg(long)]
    family: PathBuf,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, value_enum, default_value = "symmetric")]
    mode: ModeArg,
    /// Kept biclique indices in asymmetric mode, e.g. "0,3,4".
    #[arg(long, value_delimiter = ',')]
    marked: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value = "exact")]
    truncation: TruncationArg,
    /// "median" or a fixed d in bits.
    #[arg(long, default_value = "median")]
    threshold: String,
    #[arg(long, env = "ZARANK_WITNESS_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
    witness_budget: u64,
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ScModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Args, Serialize)]
struct ScVerifyArgs {
    #[arg(long)]
    layered: PathBuf,
    /// Inclusive range "a..b"; default all k.
    #[arg(long)]
    k_range: Option<String>,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: ScModeArg,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, env = "ZARANK_PAIR_BUDGET", default_value_t = DEFAULT_PAIR_BUDGET)]
    pair_budget: u64,
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct ScAnalyzeArgs {
    #[arg(long)]
    layered: PathBuf,
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(["7", "8"]))]
    theorem: String,
    /// Constant of the edge-count audit.
    #[arg(long = "B", default_value_t = 1.0)]
    #[serde(rename = "B")]
    big_b: f64,
    /// Constant of the tradeoff audit.
    #[arg(long = "D", default_value_t = 1.0)]
    #[serde(rename = "D")]
    big_d: f64,
    /// Reject unbalanced input instead of padding it.
    #[arg(long)]
    require_balanced: bool,
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    spec: PathBuf,
    /// Overrides outputs.csv.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Overrides outputs.json.
    #[arg(long)]
    json: Option<PathBuf>,
}

/// Error that maps to exit code 2.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure(msg.into())
}

fn check_writable(path: &Path, force: bool) -> Result<(), Failure> {
    if path.exists() && !force {
        return Err(usage(format!("{} exists; pass --force to overwrite", path.display())));
    }
    Ok(())
}

fn emit(text: &str, out: Option<&Path>, force: bool) -> Result<(), Failure> {
    match out {
        Some(path) => {
            check_writable(path, force)?;
            write_text(path, text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn witness_config(budget: u64, method: Method) -> WitnessConfig {
    WitnessConfig {
        node_budget: budget,
        method,
    }
}

fn bounds(args: &BoundsArgs, force: bool) -> Outcome {
    let family = load_family(&args.family)?;
    let constants = Constants {
        a: args.a,
        b: args.b,
        c: args.c,
        d: args.d,
    };
    let r = BoundReport::evaluate(&family, constants);
    emit(&envelope_json("bounds", args, &r), args.out.as_deref(), force)?;
    if args.out.is_some() {
        let yes = |b: bool| if b { "yes" } else { "no" };
        println!("n={} k={} r={} edges={}", r.n, r.k, r.r, r.edge_count);
        println!("{:<28} {:>14} {:>14} {:>4}", "condition", "lhs", "rhs", "ok");
        println!("{:<28} {:>14.4} {:>14.4} {:>4}", "kst", r.kst_lhs, r.kst_rhs, yes(r.kst_satisfied));
        if let (Some(l), Some(h)) = (r.hansel_lhs, r.hansel_rhs) {
            println!("{:<28} {:>14.4} {:>14.4} {:>4}", "hansel (diagnostic)", l, h, yes(l >= h));
        }
        if let Some(s) = &r.symmetric {
            println!("{:<28} {:>14.4} {:>14.4} {:>4}", "symmetric necessary", s.lhs, s.rhs, yes(s.satisfied));
        }
        println!(
            "{:<28} {:>14.4} {:>14.4} {:>4}",
            "asymmetric necessary",
            r.asymmetric_min,
            r.asymmetric_rhs,
            yes(r.asymmetric_satisfied)
        );
    }
    Ok(false)
}

fn construct(args: &ConstructArgs, force: bool) -> Outcome {
    let sizes = parse_sizes(&args.sizes)?;
    if let Some(p) = &args.out {
        check_writable(p, force)?;
    }
    if let Some(p) = &args.family_out {
        check_writable(p, force)?;
    }
    let mode = match args.certificate {
        CertArg::Exact => CertificateMode::Exact,
        CertArg::Relaxed => CertificateMode::Relaxed,
    };
    let certificate = certify_union_bound(args.n, args.k, &sizes, mode)?;
    let witness = witness_config(args.witness_budget, Method::BranchBound);
    let outcome = construct_report(args.n, args.k, &sizes, &RandomSource::new(args.seed), args.max_attempts, &witness)?;
    if let Some(p) = &args.family_out {
        write_text(p, &zarank::io::to_json(&outcome.family))?;
    }
    #[derive(Serialize)]
    struct Report<'a> {
        certificate: &'a zarank::construct::ConstructionCertificate,
        construction: &'a zarank::experiment::ConstructOutcome,
    }
    let report = Report {
        certificate: &certificate,
        construction: &outcome,
    };
    emit(&envelope_json("construct", args, &report), args.out.as_deref(), force)?;
    Ok(outcome.status == "exhausted")
}

fn verify(args: &VerifyArgs, force: bool) -> Outcome {
    let (g, k) = match (&args.family, &args.graph) {
        (Some(p), _) => {
            let f = load_family(p)?;
            (union_of(&f), args.k.unwrap_or(f.k()))
        }
        (None, Some(p)) => {
            let k = args.k.ok_or_else(|| usage("--graph needs --k"))?;
            (load_graph(p)?, k)
        }
        (None, None) => unreachable!("clap requires one input"),
    };
    let method = match args.method {
        MethodArg::BranchBound => Method::BranchBound,
        MethodArg::Exhaustive => Method::Exhaustive,
    };
    let r = has_kxk_independent_set(&g, k, &witness_config(args.witness_budget, method))?;
    emit(&envelope_json("verify", args, &r), args.out.as_deref(), force)?;
    Ok(r.found)
}

fn attack(args: &AttackArgs, force: bool) -> Outcome {
    let family = load_family(&args.family)?;
    let mode = match args.mode {
        ModeArg::Symmetric => AttackMode::Symmetric,
        ModeArg::Asymmetric => AttackMode::Asymmetric,
    };
    if args.marked.is_some() && matches!(args.mode, ModeArg::Symmetric) {
        return Err(usage("--marked only applies to --mode asymmetric"));
    }
    let mut cfg = AttackConfig::new(mode, args.trials, RandomSource::new(args.seed));
    cfg.marked = args.marked.clone();
    cfg.truncation = match args.truncation {
        TruncationArg::Exact => Truncation::Exact,
        TruncationArg::None => Truncation::None,
    };
    cfg.threshold = match args.threshold.as_str() {
        "median" => Threshold::Median,
        s => Threshold::Fixed(
            s.parse()
                .map_err(|_| usage(format!("--threshold must be \"median\" or a number, got {s:?}")))?,
        ),
    };
    cfg.witness = witness_config(args.witness_budget, Method::BranchBound);
    let r = run_attack(&family, &cfg)?;
    emit(&envelope_json("attack", args, &r), args.out.as_deref(), force)?;
    Ok(r.success_trial.is_some())
}

fn parse_k_range(s: &str) -> Result<Vec<usize>, Failure> {
    let bad = || usage(format!("--k-range must look like a..b, got {s:?}"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a..=b).collect())
}

fn sc_verify(args: &ScVerifyArgs, force: bool) -> Outcome {
    let g = load_layered(&args.layered)?;
    let ks = match &args.k_range {
        Some(s) => KSelection::List(parse_k_range(s)?),
        None => KSelection::All,
    };
    let mode = match args.mode {
        ScModeArg::Exhaustive => VerifyMode::Exhaustive {
            budget: args.pair_budget,
        },
        ScModeArg::Sampled => {
            let seed = args.seed.ok_or_else(|| usage("--mode sampled needs --seed"))?;
            let samples = args.samples.ok_or_else(|| usage("--mode sampled needs --samples"))?;
            VerifyMode::Sampled {
                samples,
                source: RandomSource::new(seed),
            }
        }
    };
    let v = verify_superconcentrator(&g, &ks, mode)?;
    emit(&envelope_json("sc-verify", args, &v), args.out.as_deref(), force)?;
    Ok(v.failing.is_some())
}

fn sc_analyze(args: &ScAnalyzeArgs, force: bool) -> Outcome {
    let g = load_layered(&args.layered)?;
    let text = if args.theorem == "7" {
        envelope_json("sc-analyze", args, &edge_lower_bound_audit(&g, args.big_b)?)
    } else {
        envelope_json("sc-analyze", args, &tradeoff_audit(&g, args.big_d, args.require_balanced)?)
    };
    emit(&text, args.out.as_deref(), force)?;
    Ok(false)
}

fn sweep(args: &SweepArgs, force: bool) -> Outcome {
    let spec = ExperimentSpec::load(&args.spec)?;
    let csv_path = args.csv.clone().or_else(|| spec.outputs.csv.clone());
    let json_path = args.json.clone().or_else(|| spec.outputs.json.clone());
    for p in csv_path.iter().chain(json_path.iter()) {
        check_writable(p, force)?;
    }
    let results = run_sweep(&spec)?;
    let csv = sweep_csv(spec.command, &results)?;
    match &csv_path {
        Some(p) => write_text(p, &csv)?,
        None if json_path.is_none() => print!("{csv}"),
        None => {}
    }
    if let Some(p) = &json_path {
        write_text(p, &sweep_json(&spec, &results))?;
    }
    Ok(results.iter().any(|r| r.refutation))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("global pool is configured once");
    }
    let force = cli.force;
    let outcome = match &cli.command {
        Command::Bounds(a) => bounds(a, force),
        Command::Construct(a) => construct(a, force),
        Command::Verify(a) => verify(a, force),
        Command::Attack(a) => attack(a, force),
        Command::ScVerify(a) => sc_verify(a, force),
        Command::ScAnalyze(a) => sc_analyze(a, force),
        Command::Sweep(a) => sweep(a, force),
    };
    match outcome {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

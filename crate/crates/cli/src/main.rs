//! `fanodeg`: computes the degree of the Fano scheme F_k(X) of k-planes on a
//! general degree-d hypersurface in P^n, cross-checking the Bott residue sum
//! against coefficient-extraction oracles.
//!
//! Exit codes are a stable contract:
//!   0  success
//!   2  invalid parameters (k >= n, d < 1, delta < 0, malformed weights, ...)
//!   3  hypothesis violation (d = 2 and n < 2k+1) without --force-hypothesis
//!   4  internal disagreement across trials or methods

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde::Serialize;

use fano_core::{
    dm_degree, fano_degree_bott_with, vdw_lines, BigInt, BottOptions, FanoError, ProblemInstance,
    WeightVector,
};

const THREADS_ENV: &str = "FANO_THREADS";

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Bott,
    Dm,
    Vdw,
    All,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Bott => "bott",
            Method::Dm => "dm",
            Method::Vdw => "vdw",
            Method::All => "all",
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum WeightStrategy {
    Sequential,
    Random,
}

/// Degree of the Fano scheme of k-planes on a general hypersurface of
/// degree d in projective n-space, by Bott residues and independent
/// coefficient-extraction formulas.
#[derive(Parser)]
#[command(name = "fanodeg", version, disable_help_subcommand = true)]
struct Args {
    /// Dimension of the linear subspaces
    #[arg(long)]
    k: u32,

    /// Degree of the hypersurface
    #[arg(long)]
    d: u32,

    /// Dimension of the ambient projective space
    #[arg(long)]
    n: u32,

    /// Computation method; `all` cross-checks every applicable one
    #[arg(long, value_enum, default_value_t = Method::All)]
    method: Method,

    /// Explicit weights as a comma-separated integer list (length n+1,
    /// pairwise distinct); overrides --weight-strategy for the first trial
    #[arg(long)]
    weights: Option<String>,

    /// How the first trial's weight vector is chosen when --weights is absent
    #[arg(long, value_enum, default_value_t = WeightStrategy::Sequential)]
    weight_strategy: WeightStrategy,

    /// Seed for random weight vectors; trial t uses seed + t
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Number of weight vectors the Bott method must agree across
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    trials: u32,

    /// Worker threads for the Bott sum; defaults to FANO_THREADS or all cores
    #[arg(long, value_parser = clap::value_parser!(usize))]
    threads: Option<usize>,

    /// Evaluate the formula even when the d=2 smoothness hypothesis fails
    #[arg(long)]
    force_hypothesis: bool,

    /// Emit the report as a single JSON object instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Serialize)]
struct ComputeReport {
    k: u32,
    d: u32,
    n: u32,
    delta: i64,
    degree: String,
    method: String,
    per_method_results: BTreeMap<String, String>,
    trials: u32,
    trials_agreed: bool,
    elapsed_ms: BTreeMap<String, u64>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    fn invalid(message: impl Into<String>) -> Self {
        Failure::new(2, message)
    }

    fn disagreement(message: impl Into<String>) -> Self {
        Failure::new(4, message)
    }
}

impl From<FanoError> for Failure {
    fn from(e: FanoError) -> Self {
        let code = match e {
            FanoError::InvalidArgument(_)
            | FanoError::DistinctnessViolation { .. }
            | FanoError::NegativeDelta { .. }
            | FanoError::DimensionMismatch(_) => 2,
            FanoError::HypothesisViolation { .. } => 3,
            FanoError::Internal(_) => 4,
        };
        Failure::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(report) => {
            if args.json {
                let mut line = serde_json::to_string(&report).expect("report serializes");
                line.push('\n');
                print!("{line}");
            } else {
                print!("{}", render_text(&report));
            }
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(args: &Args) -> Result<ComputeReport, Failure> {
    let p = ProblemInstance::new(args.k, args.d, args.n)?;
    p.delta_exponent()?;

    if !p.hypothesis_satisfied() {
        if !args.force_hypothesis {
            return Err(FanoError::HypothesisViolation {
                k: args.k,
                n: args.n,
            }
            .into());
        }
        eprintln!(
            "note: d = {} and n < 2k+1; reporting the formula value, \
             Fano-scheme interpretation not guaranteed",
            args.d
        );
    }

    let vdw_applicable = args.k == 1 && args.n >= 3 && args.d == 2 * args.n - 3;
    let methods: Vec<Method> = match args.method {
        Method::All => {
            let mut ms = vec![Method::Bott, Method::Dm];
            if vdw_applicable {
                ms.push(Method::Vdw);
            }
            ms
        }
        Method::Vdw if !vdw_applicable => {
            return Err(Failure::invalid(format!(
                "method vdw requires k = 1, n >= 3, and d = 2n-3; got (k={}, d={}, n={})",
                args.k, args.d, args.n
            )));
        }
        m => vec![m],
    };

    let explicit_weights = args
        .weights
        .as_deref()
        .map(|list| parse_weights(list, p.n_plus_1()))
        .transpose()?;

    let options = BottOptions {
        threads: thread_budget(args)?,
        force_hypothesis: args.force_hypothesis,
    };

    let mut per_method_results = BTreeMap::new();
    let mut elapsed_ms = BTreeMap::new();
    for method in &methods {
        let start = Instant::now();
        let value = match method {
            Method::Bott => run_bott_trials(args, &p, explicit_weights.as_ref(), &options)?,
            Method::Dm => dm_degree(&p)?,
            Method::Vdw => vdw_lines(args.n)?,
            Method::All => unreachable!("expanded above"),
        };
        elapsed_ms.insert(method.name().to_string(), start.elapsed().as_millis() as u64);
        per_method_results.insert(method.name().to_string(), value.to_string());
    }

    let mut degrees = per_method_results.values();
    let degree = degrees.next().expect("at least one method ran").clone();
    if let Some(other) = degrees.find(|v| **v != degree) {
        return Err(Failure::disagreement(format!(
            "methods disagree: {per_method_results:?} (e.g. {degree} vs {other})"
        )));
    }

    Ok(ComputeReport {
        k: args.k,
        d: args.d,
        n: args.n,
        delta: p.delta(),
        degree,
        method: args.method.name().to_string(),
        per_method_results,
        trials: args.trials,
        trials_agreed: true,
        elapsed_ms,
    })
}

/// Runs the Bott sum over `trials` weight vectors and insists the degree is
/// the same for each; any divergence is a hard bug signal, not a tolerance.
fn run_bott_trials(
    args: &Args,
    p: &ProblemInstance,
    explicit: Option<&WeightVector>,
    options: &BottOptions,
) -> Result<BigInt, Failure> {
    let bound = std::cmp::max(2 * p.n_plus_1() as u64, 100);
    let mut agreed: Option<BigInt> = None;
    for trial in 0..args.trials {
        let w = match (trial, explicit, args.weight_strategy) {
            (0, Some(w), _) => w.clone(),
            (0, None, WeightStrategy::Sequential) => WeightVector::sequential(p.n_plus_1())?,
            (0, None, WeightStrategy::Random) => {
                WeightVector::random(p.n_plus_1(), args.seed, bound)?
            }
            (t, _, _) => WeightVector::random(p.n_plus_1(), args.seed + u64::from(t), bound)?,
        };
        let value = fano_degree_bott_with(p, &w, options)?;
        match &agreed {
            None => agreed = Some(value),
            Some(previous) if *previous != value => {
                return Err(Failure::disagreement(format!(
                    "bott trials disagree: trial 0 gave {previous}, trial {trial} gave {value} \
                     (weights {:?})",
                    w.values()
                )));
            }
            Some(_) => {}
        }
    }
    Ok(agreed.expect("trials >= 1"))
}

fn parse_weights(list: &str, n_plus_1: usize) -> Result<WeightVector, Failure> {
    let values = list
        .split(',')
        .map(|piece| {
            piece
                .trim()
                .parse::<BigInt>()
                .map_err(|_| Failure::invalid(format!("--weights entry {piece:?} is not an integer")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.len() != n_plus_1 {
        return Err(Failure::invalid(format!(
            "--weights must list exactly n+1 = {n_plus_1} integers, got {}",
            values.len()
        )));
    }
    Ok(WeightVector::new(values)?)
}

fn thread_budget(args: &Args) -> Result<usize, Failure> {
    if let Some(threads) = args.threads {
        if threads == 0 {
            return Err(Failure::invalid("--threads must be at least 1"));
        }
        return Ok(threads);
    }
    if let Ok(raw) = std::env::var(THREADS_ENV) {
        return match raw.parse::<usize>() {
            Ok(t) if t >= 1 => Ok(t),
            _ => Err(Failure::invalid(format!(
                "{THREADS_ENV} must be a positive integer, got {raw:?}"
            ))),
        };
    }
    Ok(std::thread::available_parallelism().map_or(1, |t| t.get()))
}

fn render_text(report: &ComputeReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "F_{}(X) for a general degree-{} hypersurface in P^{}",
        report.k, report.d, report.n
    );
    let _ = writeln!(out, "delta  = {}", report.delta);
    let _ = writeln!(out, "degree = {}", report.degree);
    let _ = writeln!(out, "method = {}", report.method);
    for (method, value) in &report.per_method_results {
        let _ = writeln!(
            out,
            "  {method}: {value} ({} ms)",
            report.elapsed_ms.get(method).copied().unwrap_or(0)
        );
    }
    let _ = writeln!(
        out,
        "trials = {} ({})",
        report.trials,
        if report.trials_agreed { "agreed" } else { "DISAGREED" }
    );
    out
}

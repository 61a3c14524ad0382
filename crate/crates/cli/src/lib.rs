//! Command-line front end: argument parsing, dispatch to the verification
//! suites, and the JSON report.

mod commands;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use filtra_core::filtration::Family;
use filtra_core::FiltraError;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "filtra", version, about = "Verify filtered-group constructions at desk scale")]
pub struct Cli {
    /// Write the JSON report here and print a short summary instead.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structure of a congruence quotient L_i / L_j.
    Quotient(QuotientArgs),
    /// Boundedness of a congruence tower: d(L_i / L_j) <= bound for all i < j <= jmax.
    PCongruence(PCongruenceArgs),
    /// Stability and Lie-like checks for a packaged split extension.
    Stability(StabilityArgs),
    /// Re-evaluate a counterexample saved from a stability report.
    Replay(ReplayArgs),
    /// Brackets, power map and relation table of the graded Lie algebra.
    Graded {
        #[command(subcommand)]
        command: GradedCommand,
    },
    /// The conjugation representation of a pair (gamma, y).
    Rep(RepArgs),
    /// Closed-form product, inverse, conjugate and commutator against direct products.
    HolomorphIdentities(IdentitiesArgs),
    /// Automorphism and abelianization checks for the free-group fixtures.
    FreegroupFixtures(FixturesArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyArg {
    Pgamma,
    Gamma,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Pgamma => Family::PGamma,
            FamilyArg::Gamma => Family::Gamma,
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct QuotientArgs {
    #[arg(long, value_enum, default_value = "pgamma")]
    pub family: FamilyArg,
    #[arg(short)]
    pub p: u64,
    #[arg(short)]
    pub i: u32,
    #[arg(short)]
    pub j: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct PCongruenceArgs {
    #[arg(long, value_enum, default_value = "pgamma")]
    pub family: FamilyArg,
    #[arg(short)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub r0: u32,
    #[arg(long, default_value_t = 3)]
    pub jmax: u32,
    /// Bound e on the minimal number of generators.
    #[arg(long, short = 'e', default_value_t = 3)]
    pub bound: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExampleArg {
    Congruence,
    Poison,
    Trivial,
}

#[derive(Debug, Args, Serialize)]
pub struct ExtensionArgs {
    #[arg(long, value_enum, default_value = "congruence")]
    pub example: ExampleArg,
    #[arg(short, default_value_t = 3)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub r0: u32,
    #[arg(long, default_value_t = 1)]
    pub s0: u32,
    /// Depth cap of both filtrations (matrix examples only).
    #[arg(long, default_value_t = 3)]
    pub cap: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct StabilityArgs {
    #[command(flatten)]
    pub extension: ExtensionArgs,
    /// Largest r; defaults to the extension's cap.
    #[arg(long)]
    pub rmax: Option<u32>,
    /// Largest s; defaults to the extension's cap.
    #[arg(long)]
    pub smax: Option<u32>,
    /// Largest r + s; defaults to the extension's cap.
    #[arg(long)]
    pub sum_max: Option<u32>,
    /// Samples per (r, s) cell.
    #[arg(long, default_value_t = 500)]
    pub count: usize,
    #[arg(long)]
    pub seed: u64,
    /// Maximum word length of sampled elements.
    #[arg(long, default_value_t = 6)]
    pub radius: usize,
    /// Also report the literal f(x g(y)) condition (never affects the verdict).
    #[arg(long)]
    pub literal: bool,
    /// Also check the generator count of F_r / F_{r+s} (congruence example only).
    #[arg(long)]
    pub generator_bound: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct ReplayArgs {
    #[command(flatten)]
    pub extension: ExtensionArgs,
    /// A stability report or a single counterexample, as JSON.
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum GradedCommand {
    /// [x, y] for x in gr_q and y in gr_s, coordinates as "a,b,d".
    Bracket(BracketArgs),
    /// The p-th power map on a class of gr_q.
    Power(PowerArgs),
    /// Relation table, basis classes and bracket well-definedness.
    Verify(GradedVerifyArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct BracketArgs {
    #[arg(short)]
    pub p: u64,
    #[arg(short)]
    pub q: u32,
    #[arg(short)]
    pub s: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, allow_hyphen_values = true)]
    pub y: String,
}

#[derive(Debug, Args, Serialize)]
pub struct PowerArgs {
    #[arg(short)]
    pub p: u64,
    #[arg(short)]
    pub q: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
}

#[derive(Debug, Args, Serialize)]
pub struct GradedVerifyArgs {
    #[arg(short)]
    pub p: u64,
    #[arg(long, default_value_t = 5)]
    pub qmax: u32,
    #[arg(long)]
    pub seed: u64,
    /// Perturbed lifts per (q, s) cell.
    #[arg(long, default_value_t = 200)]
    pub perturbations: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct RepArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Modulus m = p^e, or Z for the integers.
    #[arg(long = "mod", default_value = "9")]
    pub modulus: String,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
    /// Also sample the homomorphism and kernel checks.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, default_value_t = 500)]
    pub count: usize,
    #[arg(long, required_if_eq("verify", "true"))]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendArg {
    Congruence,
    Free,
    All,
}

#[derive(Debug, Args, Serialize)]
pub struct IdentitiesArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub backend: BackendArg,
    #[arg(short, default_value_t = 3)]
    pub p: u64,
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 6)]
    pub radius: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct FixturesArgs {
    #[arg(long, default_value_t = 4)]
    pub nmax: usize,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub command: String,
    pub config: Value,
    pub results: Value,
    pub passed: bool,
    pub timings: BTreeMap<String, f64>,
}

/// What a command produced, before timing and packaging.
pub struct Outcome {
    pub results: Value,
    pub passed: bool,
    /// Human-readable lines for the terminal summary.
    pub summary: Vec<String>,
    pub timings: BTreeMap<String, f64>,
}

impl Outcome {
    pub(crate) fn new(results: impl Serialize, passed: bool) -> Outcome {
        Outcome {
            results: serde_json::to_value(results).expect("report values serialize"),
            passed,
            summary: Vec::new(),
            timings: BTreeMap::new(),
        }
    }

    pub(crate) fn line(mut self, s: impl Into<String>) -> Outcome {
        self.summary.push(s.into());
        self
    }
}

/// A failed run: exit code and message.
#[derive(Debug)]
pub struct RunError {
    pub code: i32,
    pub message: String,
}

impl From<FiltraError> for RunError {
    fn from(e: FiltraError) -> RunError {
        let code = match e {
            FiltraError::GuardExceeded { .. } | FiltraError::CapExceeded { .. } => EXIT_GUARD,
            _ => EXIT_USAGE,
        };
        RunError { code, message: e.to_string() }
    }
}

/// Runs the parsed command. The report carries the verdict; the exit code is
/// [`exit_code`] of it.
pub fn run(cli: &Cli) -> Result<(Report, Vec<String>), RunError> {
    let start = Instant::now();
    let (name, config, outcome) = commands::dispatch(&cli.command)?;
    let mut timings = outcome.timings;
    timings.insert("total_ms".into(), start.elapsed().as_secs_f64() * 1e3);
    let report = Report {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION"),
        command: name,
        config,
        results: outcome.results,
        passed: outcome.passed,
        timings,
    };
    Ok((report, outcome.summary))
}

pub fn exit_code(report: &Report) -> i32 {
    if report.passed {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

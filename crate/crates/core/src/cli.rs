//! Command-line front end. The binary is a thin wrapper around [`run`].
//!
//! Exit codes: 0 success, 1 runtime failure or oracle disagreement,
//! 2 invalid portrait, 3 parse error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::format::{parse_portrait, InputError};
use crate::graphmodel::{build_graph_model, incidence_matrix};
use crate::pairspace::{core_entropy, PairspaceError, TransitionMatrix};
use crate::portrait::CriticalPortrait;
use crate::spectral::{
    char_poly_radius, spectral_radius, SpectralError, DEFAULT_MAX_ITER, DEFAULT_TOL, MAX_ORACLE_DIM,
};
use crate::sweep::{fmt_sig12, quadratic_sweep, write_csv};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_PARSE: i32 = 3;

/// Largest tolerated gap between the power-iteration and exact radii.
pub const ORACLE_AGREEMENT: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "core-entropy",
    version,
    about = "Core entropy of rational critical portraits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a portrait file against the portrait axioms.
    Validate(FileArgs),
    /// Print rho, log rho and the Collatz–Wielandt enclosure.
    Entropy(FileArgs),
    /// Dump the pair basis and the transition matrix.
    Matrix(FileArgs),
    /// List the unlinked classes as circle arcs.
    Classes(FileArgs),
    /// Cross-check against the graph model and the exact characteristic polynomial.
    Oracle(FileArgs),
    /// Quadratic-family sweep over all reduced angles up to a denominator, as CSV.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long = "max-iter", default_value_t = DEFAULT_MAX_ITER)]
    pub max_iter: usize,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct FileArgs {
    pub file: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long = "max-den")]
    pub max_den: u64,
    #[arg(long, default_value_t = 2)]
    pub degree: u64,
    /// Output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = default_jobs())]
    pub jobs: usize,
    #[command(flatten)]
    pub common: Common,
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub tolerance: f64,
    pub max_iterations: usize,
    pub output_format: OutputFormat,
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tolerance: DEFAULT_TOL,
            max_iterations: DEFAULT_MAX_ITER,
            output_format: OutputFormat::Text,
            jobs: 1,
        }
    }
}

impl RunConfig {
    fn from_common(c: &Common, default_format: OutputFormat, jobs: usize) -> Result<Self, String> {
        if c.tol.is_nan() || c.tol <= 0.0 {
            return Err(format!("--tol must be positive, got {}", c.tol));
        }
        if jobs == 0 {
            return Err("--jobs must be at least 1".into());
        }
        Ok(RunConfig {
            tolerance: c.tol,
            max_iterations: c.max_iter,
            output_format: if c.json { OutputFormat::Json } else { default_format },
            jobs,
        })
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli.command, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            code
        }
    }
}

pub fn run(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cmd {
        Command::Validate(a) => with_portrait(&a, out, cmd_validate),
        Command::Entropy(a) => with_portrait(&a, out, cmd_entropy),
        Command::Matrix(a) => with_portrait(&a, out, cmd_matrix),
        Command::Classes(a) => with_portrait(&a, out, cmd_classes),
        Command::Oracle(a) => with_portrait(&a, out, cmd_oracle),
        Command::Sweep(a) => cmd_sweep(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

/// A command failure: exit code plus a message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn runtime(message: impl ToString) -> Failure {
        Failure {
            code: EXIT_RUNTIME,
            message: message.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::runtime(e)
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Failure {
        match e {
            InputError::Parse(p) => Failure {
                code: EXIT_PARSE,
                message: format!("parse error: {p}"),
            },
            InputError::Invalid(v) => Failure {
                code: EXIT_INVALID,
                message: format!("invalid portrait ({}): {v}", v.axiom()),
            },
        }
    }
}

impl From<PairspaceError> for Failure {
    fn from(e: PairspaceError) -> Failure {
        match e {
            PairspaceError::Spectral(SpectralError::BudgetExhausted(r)) => Failure::runtime(format!(
                "iteration budget exhausted after {} iterations; best enclosure [{}, {}]",
                r.iterations, r.lower, r.upper
            )),
            other => Failure::runtime(other),
        }
    }
}

pub type CmdResult = Result<i32, Failure>;

fn read_portrait(path: &Path) -> Result<CriticalPortrait, Failure> {
    let src = fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    Ok(parse_portrait(&src)?)
}

fn with_portrait(
    args: &FileArgs,
    out: &mut dyn Write,
    f: fn(&CriticalPortrait, &RunConfig, &mut dyn Write) -> CmdResult,
) -> CmdResult {
    let cfg = RunConfig::from_common(&args.common, OutputFormat::Text, 1).map_err(|m| Failure {
        code: EXIT_PARSE,
        message: m,
    })?;
    let p = read_portrait(&args.file)?;
    f(&p, &cfg, out)
}

fn print_json(out: &mut dyn Write, v: &serde_json::Value) -> io::Result<()> {
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(v).expect("JSON values serialize")
    )
}

pub fn cmd_validate(p: &CriticalPortrait, cfg: &RunConfig, out: &mut dyn Write) -> CmdResult {
    let sizes: Vec<usize> = p.elements().iter().map(|e| e.len()).collect();
    let criticality: usize = sizes.iter().map(|s| s - 1).sum();
    if cfg.output_format == OutputFormat::Json {
        print_json(
            out,
            &json!({"valid": true, "degree": p.degree(), "elements": sizes.len(), "sizes": sizes, "criticality": criticality}),
        )?;
    } else {
        writeln!(out, "degree {}, {} elements", p.degree(), sizes.len())?;
        writeln!(out, "element sizes: {sizes:?}")?;
        writeln!(out, "criticality: {criticality}")?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_entropy(p: &CriticalPortrait, cfg: &RunConfig, out: &mut dyn Write) -> CmdResult {
    let e = core_entropy(p, cfg.tolerance, cfg.max_iterations)?;
    if cfg.output_format == OutputFormat::Json {
        print_json(out, &serde_json::to_value(&e).expect("entropy serializes"))?;
    } else {
        writeln!(out, "rho = {:.12}", e.rho)?;
        writeln!(out, "log_rho = {:.12}", e.log_rho)?;
        writeln!(out, "enclosure = [{:.15}, {:.15}]", e.spectral.lower, e.spectral.upper)?;
        writeln!(
            out,
            "dim = {}, method = {}, iterations = {}, sccs = {}",
            e.dim, e.spectral.method, e.spectral.iterations, e.spectral.sccs
        )?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_matrix(p: &CriticalPortrait, cfg: &RunConfig, out: &mut dyn Write) -> CmdResult {
    let tm = TransitionMatrix::build(p)?;
    if cfg.output_format == OutputFormat::Json {
        let basis: Vec<String> = tm.basis.pairs().iter().map(|q| q.to_string()).collect();
        let entries: Vec<_> = tm
            .matrix
            .triplets()
            .into_iter()
            .map(|(r, c, n)| json!([r, c, n]))
            .collect();
        print_json(out, &json!({"basis": basis, "entries": entries}))?;
    } else {
        write!(out, "{}", tm.dump())?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_classes(p: &CriticalPortrait, cfg: &RunConfig, out: &mut dyn Write) -> CmdResult {
    let classes = p.unlinked_classes();
    if cfg.output_format == OutputFormat::Json {
        print_json(out, &serde_json::to_value(&classes).expect("classes serialize"))?;
    } else {
        for (i, c) in classes.iter().enumerate() {
            let arcs: Vec<String> = c.arcs.iter().map(|a| a.to_string()).collect();
            writeln!(out, "I{}: {} length {}", i + 1, arcs.join(" "), c.total_length)?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub dim: usize,
    pub matrices_equal: bool,
    pub rho_power: f64,
    pub rho_exact: Option<f64>,
    pub delta: Option<f64>,
}

impl OracleReport {
    pub fn agrees(&self) -> bool {
        self.matrices_equal && self.delta.is_none_or(|d| d <= ORACLE_AGREEMENT)
    }
}

pub fn oracle_report(p: &CriticalPortrait, cfg: &RunConfig) -> Result<OracleReport, PairspaceError> {
    let tm = TransitionMatrix::build(p)?;
    let (g, l) = build_graph_model(p);
    let graph_matrix = incidence_matrix(&g, &l);
    let power = spectral_radius(&tm.matrix, cfg.tolerance, cfg.max_iterations)?;
    let exact = if tm.dim() <= MAX_ORACLE_DIM {
        Some(char_poly_radius(&tm.matrix)?.rho)
    } else {
        None
    };
    Ok(OracleReport {
        dim: tm.dim(),
        matrices_equal: graph_matrix == tm.matrix,
        rho_power: power.rho,
        rho_exact: exact,
        delta: exact.map(|x| (x - power.rho).abs()),
    })
}

pub fn cmd_oracle(p: &CriticalPortrait, cfg: &RunConfig, out: &mut dyn Write) -> CmdResult {
    let r = oracle_report(p, cfg)?;
    if cfg.output_format == OutputFormat::Json {
        print_json(out, &json!({"report": r, "agree": r.agrees()}))?;
    } else {
        writeln!(
            out,
            "graph-model matrix: {}",
            if r.matrices_equal { "equal" } else { "DIFFERENT" }
        )?;
        writeln!(out, "rho (power) = {:.12}", r.rho_power)?;
        match (r.rho_exact, r.delta) {
            (Some(x), Some(d)) => {
                writeln!(out, "rho (charpoly) = {x:.12}")?;
                writeln!(out, "|delta rho| = {d:.3e}")?;
            }
            _ => writeln!(out, "charpoly leg skipped: dim {} > {MAX_ORACLE_DIM}", r.dim)?,
        }
        writeln!(out, "{}", if r.agrees() { "agree" } else { "DISAGREE" })?;
    }
    Ok(if r.agrees() { EXIT_OK } else { EXIT_RUNTIME })
}

pub fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> CmdResult {
    let usage = |m: String| Failure {
        code: EXIT_PARSE,
        message: m,
    };
    let cfg = RunConfig::from_common(&args.common, OutputFormat::Csv, args.jobs).map_err(usage)?;
    if args.degree != 2 {
        return Err(usage(format!(
            "sweeps are defined for the quadratic family only (got --degree {}); use portrait files for higher degrees",
            args.degree
        )));
    }
    if args.max_den == 0 {
        return Err(usage("--max-den must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(Failure::runtime)?;
    let rows = pool.install(|| quadratic_sweep(args.max_den, cfg.tolerance, cfg.max_iterations))?;
    let mut buf = Vec::new();
    if cfg.output_format == OutputFormat::Json {
        let v: Vec<_> = rows
            .iter()
            .map(|r| json!({"theta_num": r.theta_num, "theta_den": r.theta_den, "rho": fmt_sig12(r.rho), "log_rho": fmt_sig12(r.log_rho)}))
            .collect();
        print_json(&mut buf, &serde_json::Value::Array(v))?;
    } else {
        write_csv(&rows, &mut buf)?;
    }
    match &args.out {
        Some(path) => {
            fs::write(path, &buf).map_err(|e| Failure::runtime(format!("cannot write {}: {e}", path.display())))?
        }
        None => out.write_all(&buf)?,
    }
    Ok(EXIT_OK)
}

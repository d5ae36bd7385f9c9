//! Command-line front end: `compute`, `verify`, `construct` and `reproduce`.
//!
//! Exit codes: [`EXIT_OK`] on success, a valid certificate or an undefined
//! invariant; [`EXIT_FAILURE`] on an invalid certificate, a table mismatch or
//! any error; [`EXIT_INCOMPLETE`] when a solver ran out of time;
//! [`EXIT_USAGE`] for bad flags.

mod document;
mod tables;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use document::{DocumentError, FamilyDocument};
pub use tables::{
    reproduce_table1, reproduce_table2, reproduce_table3, RowStatus, TableId, TableReport, TableRow, TABLE1, TABLE2,
};

use crate::certify::{verify_with, InvariantKind, VerificationReport, VerifyOptions};
use crate::construct::{ConstructionName, ConstructionSpec};
use crate::kneser::{KneserParams, VertexFamily, DEFAULT_VERTEX_CEILING};
use crate::solve::{solve_domination, solve_rho2, SolveResult, SolveStats, SolveStatus, SolverConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INCOMPLETE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

const OPEN_TIMEOUT_SECS: f64 = 3600.0;

#[derive(Debug, Parser)]
#[command(
    name = "kneser",
    version,
    about = "Domination invariants and 2-packings of Kneser graphs K(n,r)"
)]
pub struct Cli {
    /// Largest binomial(n, r) any command may enumerate.
    #[arg(long, global = true, env = "KNESER_VERTEX_CEILING", default_value_t = DEFAULT_VERTEX_CEILING)]
    pub vertex_ceiling: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute an invariant exactly (or bracket it on timeout).
    Compute(ComputeArgs),
    /// Check a family document against an invariant.
    Verify(VerifyArgs),
    /// Print one of the explicit constructions as a family document.
    Construct(ConstructArgs),
    /// Recompute one of the published tables.
    Reproduce(ReproduceArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InvariantArg {
    #[value(name = "gamma_k")]
    GammaK,
    #[value(name = "gamma_xk")]
    GammaXk,
    #[value(name = "gamma_xkt")]
    GammaXkt,
    #[value(name = "rho2", alias = "two_packing")]
    Rho2,
}

impl InvariantArg {
    pub fn kind(self) -> InvariantKind {
        match self {
            InvariantArg::GammaK => InvariantKind::KDom,
            InvariantArg::GammaXk => InvariantKind::KTuple,
            InvariantArg::GammaXkt => InvariantKind::KTupleTotal,
            InvariantArg::Rho2 => InvariantKind::TwoPacking,
        }
    }

    fn label(self) -> &'static str {
        match self {
            InvariantArg::Rho2 => "rho2",
            other => other.kind().name(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct SolveFlags {
    /// Wall-clock budget per solver call, in seconds [default: 60, or 3600 with --attempt-open].
    #[arg(long)]
    pub timeout: Option<f64>,
    /// Worker threads for the search.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Longer default budget and larger search limits for open instances.
    #[arg(long)]
    pub attempt_open: bool,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(long, value_enum)]
    pub invariant: InvariantArg,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub r: u32,
    /// Multiplicity for the domination invariants [default: 1].
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[command(flatten)]
    pub solve: SolveFlags,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub invariant: InvariantArg,
    /// Multiplicity for the domination invariants [default: 1].
    #[arg(long)]
    pub k: Option<u32>,
    /// Family document, or `-` for standard input.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// disjoint_clique, gamma_kt_boundary, rho3, rho4, doubling_lift,
    /// diagonal_lift, normalize4, normalize5 or table3.
    #[arg(long)]
    pub name: String,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long)]
    pub a: Option<u32>,
    /// Input family for lifts and normalizations (`-` for standard input).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Run the matching certificate check on the result.
    #[arg(long)]
    pub check: bool,
    /// Seed for the generated input of a normalization without --input.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// 1, 2 or 3.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub table: u8,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[command(flatten)]
    pub solve: SolveFlags,
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Error(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILURE
        }
    }
}

enum Failure {
    Usage(String),
    Error(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Error(e.to_string())
    }
}

type CmdResult = std::result::Result<i32, Failure>;

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    match &cli.command {
        Command::Compute(a) => cmd_compute(a, cli.vertex_ceiling, out),
        Command::Verify(a) => cmd_verify(a, cli.vertex_ceiling, out),
        Command::Construct(a) => cmd_construct(a, cli.vertex_ceiling, out),
        Command::Reproduce(a) => cmd_reproduce(a, cli.vertex_ceiling, out),
    }
}

fn solver_config(flags: &SolveFlags, vertex_ceiling: u64) -> std::result::Result<SolverConfig, Failure> {
    let default = if flags.attempt_open { OPEN_TIMEOUT_SECS } else { 60.0 };
    let secs = flags.timeout.unwrap_or(default);
    if !(secs.is_finite() && secs > 0.0) {
        return Err(Failure::Usage(format!(
            "--timeout must be a positive number of seconds, got {secs}"
        )));
    }
    if flags.threads == 0 {
        return Err(Failure::Usage("--threads must be at least 1".into()));
    }
    let mut cfg = SolverConfig {
        timeout: Duration::from_secs_f64(secs),
        thread_count: flags.threads,
        vertex_ceiling,
        ..SolverConfig::default()
    };
    if flags.attempt_open {
        cfg.search_vertex_limit = 50_000;
        cfg.pattern_max_members = crate::solve::PATTERN_MAX_MEMBERS;
    }
    Ok(cfg)
}

fn read_family(path: &Path) -> std::result::Result<VertexFamily, Failure> {
    let doc = if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        FamilyDocument::parse(&text)
    } else {
        FamilyDocument::read(path)
    };
    let doc = doc.map_err(|e| Failure::Error(format!("{}: {e}", path.display())))?;
    doc.to_family()
        .map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).unwrap_or_default() + "\n"
}

#[derive(Serialize)]
struct ComputeReport {
    invariant: &'static str,
    n: u32,
    r: u32,
    k: Option<u32>,
    value: Option<u64>,
    status: SolveStatus,
    witness: Option<FamilyDocument>,
    stats: SolveStats,
}

fn compute_report(label: &'static str, k: Option<u32>, res: &SolveResult) -> ComputeReport {
    ComputeReport {
        invariant: label,
        n: res.params.n(),
        r: res.params.r(),
        k,
        value: res.value,
        status: res.status,
        witness: res.witness.as_ref().map(FamilyDocument::from_family),
        stats: res.stats.clone(),
    }
}

fn cmd_compute(a: &ComputeArgs, vertex_ceiling: u64, out: &mut dyn Write) -> CmdResult {
    let cfg = solver_config(&a.solve, vertex_ceiling)?;
    let params = KneserParams::new(a.n, a.r)?;
    let (res, k) = match a.invariant {
        InvariantArg::Rho2 => {
            if a.k.is_some() {
                return Err(Failure::Usage("--k does not apply to rho2".into()));
            }
            (solve_rho2(params, &cfg)?, None)
        }
        inv => {
            let k = a.k.unwrap_or(1);
            (solve_domination(params, inv.kind(), k, &cfg)?, Some(k))
        }
    };
    let report = compute_report(a.invariant.label(), k, &res);
    let text = match a.format {
        Format::Json => json(&report),
        Format::Csv => {
            let (lo, hi) = match res.status {
                SolveStatus::Bounds { lo, hi } => (lo.to_string(), hi.to_string()),
                _ => (String::new(), String::new()),
            };
            format!(
                "invariant,n,r,k,value,status,lo,hi,nodes,elapsed_ms\n{},{},{},{},{},{},{lo},{hi},{},{}\n",
                report.invariant,
                report.n,
                report.r,
                k.map_or(String::new(), |k| k.to_string()),
                res.value.map_or(String::new(), |v| v.to_string()),
                status_word(res.status),
                res.stats.nodes,
                res.stats.elapsed_ms
            )
        }
        Format::Text => {
            let k_part = k.map_or(String::new(), |k| format!(", k = {k}"));
            let mut s = format!("{} on {params}{k_part}: ", report.invariant);
            match (res.status, res.value) {
                (SolveStatus::Undefined, _) => s.push_str("undefined\n"),
                (SolveStatus::Optimal, Some(v)) => s.push_str(&format!("{v} (optimal)\n")),
                (SolveStatus::Bounds { lo, hi }, _) => {
                    s.push_str(&format!("between {lo} and {hi} (search incomplete)\n"))
                }
                _ => s.push_str("unknown\n"),
            }
            if let Some(w) = &report.witness {
                s.push_str("witness ");
                s.push_str(&w.to_text());
            }
            s.push_str(&format!(
                "{} nodes, {} ms, bound from {}\n",
                res.stats.nodes,
                res.stats.elapsed_ms,
                res.stats.bound_source.unwrap_or("-")
            ));
            s
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(match res.status {
        SolveStatus::Bounds { .. } => EXIT_INCOMPLETE,
        _ => EXIT_OK,
    })
}

fn status_word(s: SolveStatus) -> &'static str {
    match s {
        SolveStatus::Optimal => "optimal",
        SolveStatus::Bounds { .. } => "bounds",
        SolveStatus::Undefined => "undefined",
    }
}

fn cmd_verify(a: &VerifyArgs, vertex_ceiling: u64, out: &mut dyn Write) -> CmdResult {
    if a.threads == 0 {
        return Err(Failure::Usage("--threads must be at least 1".into()));
    }
    let kind = a.invariant.kind();
    let k = match (kind, a.k) {
        (InvariantKind::TwoPacking, Some(_)) => {
            return Err(Failure::Usage("--k does not apply to two_packing".into()));
        }
        (InvariantKind::TwoPacking, None) => 0,
        (_, k) => k.unwrap_or(1),
    };
    let family = read_family(&a.input)?;
    let opts = VerifyOptions {
        vertex_ceiling,
        threads: a.threads,
    };
    let report = verify_with(kind, &family, k, &opts)?;
    out.write_all(format_verification(&report, &family, a.format).as_bytes())?;
    Ok(if report.valid { EXIT_OK } else { EXIT_FAILURE })
}

fn format_verification(report: &VerificationReport, family: &VertexFamily, format: Format) -> String {
    match format {
        Format::Json => json(report),
        Format::Csv => format!(
            "invariant,k,valid,violation,checked\n{},{},{},\"{}\",{}\n",
            report.invariant_kind,
            report.k,
            report.valid,
            report.witness_violation.map_or(String::new(), |v| v.to_string()),
            report.checked_count
        ),
        Format::Text => {
            let head = format!(
                "{} with {} sets on {}, k = {}: ",
                report.invariant_kind,
                family.len(),
                family.params(),
                report.k
            );
            match report.witness_violation {
                None => format!("{head}valid ({} checked)\n", report.checked_count),
                Some(v) => format!("{head}invalid at {v} ({} checked)\n", report.checked_count),
            }
        }
    }
}

fn cmd_construct(a: &ConstructArgs, vertex_ceiling: u64, out: &mut dyn Write) -> CmdResult {
    let name: ConstructionName = a
        .name
        .parse()
        .map_err(|e: crate::Error| Failure::Usage(e.to_string()))?;
    let spec = ConstructionSpec {
        name: Some(name),
        k: a.k,
        r: a.r,
        n: a.n,
        t: a.t,
        a: a.a,
        seed: a.seed,
    };
    let input = match &a.input {
        Some(path) => Some(read_family(path)?),
        None => None,
    };
    let family = spec.build(input.as_ref())?;
    let mut doc = FamilyDocument::from_family(&family).with_meta("construction", name);
    for (key, value) in [("k", a.k), ("r", a.r), ("t", a.t), ("a", a.a)] {
        if let Some(v) = value {
            doc = doc.with_meta(key, v);
        }
    }
    if input.is_none() && matches!(name, ConstructionName::Normalize4 | ConstructionName::Normalize5) {
        doc = doc.with_meta("seed", a.seed.unwrap_or(crate::construct::DEFAULT_SEED));
    }
    let mut code = EXIT_OK;
    if a.check {
        let (kind, k) = spec.designated_check()?;
        let opts = VerifyOptions {
            vertex_ceiling,
            threads: 1,
        };
        let report = verify_with(kind, &family, k, &opts)?;
        doc = doc.with_meta(
            "check",
            format!("{kind} k={k} {}", if report.valid { "valid" } else { "invalid" }),
        );
        if !report.valid {
            code = EXIT_FAILURE;
        }
    }
    let text = match a.format {
        Format::Json => doc.to_json() + "\n",
        Format::Csv => doc.to_csv(),
        Format::Text => doc.to_text(),
    };
    out.write_all(text.as_bytes())?;
    Ok(code)
}

fn cmd_reproduce(a: &ReproduceArgs, vertex_ceiling: u64, out: &mut dyn Write) -> CmdResult {
    let cfg = solver_config(&a.solve, vertex_ceiling)?;
    let report = match TableId::from_number(a.table) {
        Some(TableId::T1) => reproduce_table1(&cfg)?,
        Some(TableId::T2) => reproduce_table2(&cfg, a.solve.attempt_open)?,
        Some(TableId::T3) => reproduce_table3()?,
        None => return Err(Failure::Usage(format!("no table {}", a.table))),
    };
    let text = match a.format {
        Format::Json => json(&report),
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    };
    out.write_all(text.as_bytes())?;
    Ok(if !report.is_passing() {
        EXIT_FAILURE
    } else if report.has_skipped() {
        EXIT_INCOMPLETE
    } else {
        EXIT_OK
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("kneser").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn compute_examples() {
        let (code, out, _) = call(&["compute", "--invariant", "gamma_k", "--k", "2", "--n", "5", "--r", "2"]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["value"], 4);
        assert_eq!(v["status"]["kind"], "optimal");

        let (code, out, _) = call(&["compute", "--invariant", "rho2", "--n", "8", "--r", "2"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("\"value\": 1"));

        let (code, out, _) = call(&[
            "compute",
            "--invariant",
            "gamma_xkt",
            "--k",
            "2",
            "--n",
            "4",
            "--r",
            "2",
        ]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["status"]["kind"], "undefined");
        assert!(v["value"].is_null());
    }

    #[test]
    fn usage_errors() {
        assert_eq!(
            call(&["compute", "--invariant", "gamma_q", "--n", "5", "--r", "2"]).0,
            EXIT_USAGE
        );
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(
            call(&[
                "compute",
                "--invariant",
                "rho2",
                "--n",
                "8",
                "--r",
                "2",
                "--timeout",
                "0"
            ])
            .0,
            EXIT_USAGE
        );
        assert_eq!(call(&["reproduce", "--table", "4"]).0, EXIT_USAGE);
        assert_eq!(call(&["construct", "--name", "nope"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn construct_examples() {
        let (code, out, _) = call(&[
            "construct",
            "--name",
            "gamma_kt_boundary",
            "--k",
            "2",
            "--r",
            "2",
            "--check",
        ]);
        assert_eq!(code, EXIT_OK);
        let doc = FamilyDocument::parse(&out).unwrap();
        assert_eq!((doc.n, doc.sets.len()), (7, 5));

        let (code, out, _) = call(&["construct", "--name", "table3", "--r", "6", "--format", "csv"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().count(), 10);
        assert_eq!(out.lines().next(), Some("1 2 3 4 5 11"));

        let (code, out, _) = call(&["construct", "--name", "rho3", "--r", "10", "--t", "3", "--check"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(FamilyDocument::parse(&out).unwrap().sets.len(), 3);

        let (code, _, err) = call(&["construct", "--name", "rho4", "--r", "10", "--t", "3"]);
        assert_eq!(code, EXIT_FAILURE);
        assert!(err.contains("error"));
    }
}

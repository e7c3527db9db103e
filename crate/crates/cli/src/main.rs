//! `depthzero` command-line driver.
//!
//! Exit codes: `0` when every check passes, `1` when some check fails, `2` for an invalid
//! configuration and `3` for an internal arithmetic error.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use depthzero::engine::SUPPORTED_Q;
use depthzero::oracle::OracleOptions;
use depthzero::suites::{run_suite, Suite, SuiteBlock};
use depthzero::tables::{dump_tables, ErratumBranch};
use rayon::prelude::*;
use serde_json::json;

const THREADS_VAR: &str = "DEPTHZERO_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "depthzero",
    version,
    about = "Exact verification of depth-zero character expansions for SL(2)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run verification suites and write a report.
    Verify(VerifyArgs),
    /// Write every motive and coefficient table as TSV.
    DumpTables(DumpArgs),
    /// Print the JSON schema of the verify report.
    ReportSchema,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Residue characteristics, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "3,5,7,11,13", value_parser = parse_prime)]
    primes: Vec<u64>,
    /// Largest depth index `n` of the cell grid.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(i64).range(0..=6))]
    n_max: i64,
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    #[arg(long, value_enum, default_value_t = BranchArg::Corrected)]
    erratum_branch: BranchArg,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Report file; standard output when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DumpArgs {
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(i64).range(0..=6))]
    n_max: i64,
    #[arg(long, value_enum, default_value_t = BranchArg::Corrected)]
    erratum_branch: BranchArg,
    #[arg(long, value_enum, default_value_t = DumpFormat::Tsv)]
    format: DumpFormat,
    /// Output directory; one subdirectory per branch when both are requested.
    #[arg(long, default_value = "tables")]
    output: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Gauss,
    Green,
    Fourier,
    Tables,
    Oracle,
    Formula,
    Endoscopy,
    Relations,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        let one = match self {
            SuiteArg::All => return Suite::ALL.to_vec(),
            SuiteArg::Gauss => Suite::Gauss,
            SuiteArg::Green => Suite::Green,
            SuiteArg::Fourier => Suite::Fourier,
            SuiteArg::Tables => Suite::Tables,
            SuiteArg::Oracle => Suite::Oracle,
            SuiteArg::Formula => Suite::Formula,
            SuiteArg::Endoscopy => Suite::Endoscopy,
            SuiteArg::Relations => Suite::Relations,
        };
        vec![one]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BranchArg {
    Corrected,
    Printed,
    Both,
}

impl BranchArg {
    fn branches(self) -> Vec<ErratumBranch> {
        match self {
            BranchArg::Corrected => vec![ErratumBranch::Corrected],
            BranchArg::Printed => vec![ErratumBranch::Printed],
            BranchArg::Both => vec![ErratumBranch::Corrected, ErratumBranch::Printed],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DumpFormat {
    Tsv,
}

fn parse_prime(s: &str) -> Result<u64, String> {
    let q: u64 = s
        .trim()
        .parse()
        .map_err(|_| format!("`{s}` is not an integer"))?;
    if SUPPORTED_Q.contains(&q) {
        Ok(q)
    } else {
        Err(format!("{q} is not one of {SUPPORTED_Q:?}"))
    }
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
enum Failure {
    Config(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 2,
            Failure::Internal(_) => 3,
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = v.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Failure::Config(format!(
            "{THREADS_VAR} must be a positive integer, got `{v}`"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Internal(format!("thread pool: {e}")))
}

/// The `(suite, q, branch)` runs of a configuration, in report order.
fn jobs(args: &VerifyArgs) -> Vec<(Suite, u64, ErratumBranch)> {
    let mut primes = args.primes.clone();
    primes.sort_unstable();
    primes.dedup();
    let mut out = Vec::new();
    for suite in args.suite.suites() {
        for &q in &primes {
            if suite.uses_branch() {
                for b in args.erratum_branch.branches() {
                    out.push((suite, q, b));
                }
            } else {
                out.push((suite, q, ErratumBranch::Corrected));
            }
        }
    }
    out
}

fn run_blocks(args: &VerifyArgs) -> Result<Vec<SuiteBlock>, Failure> {
    jobs(args)
        .into_par_iter()
        .map(|(suite, q, b)| {
            run_suite(suite, q, args.n_max, b, OracleOptions::default())
                .map_err(|e| Failure::Internal(format!("{suite} at q = {q}: {e}")))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

fn render_tsv(blocks: &[SuiteBlock]) -> String {
    let mut out =
        String::from("suite\tq\tbranch\tcheck\tcell\tpi\tmode\tlhs\trhs\tresidual\tpass\n");
    for b in blocks {
        for c in &b.cells {
            let branch = c.branch.or(b.branch).map_or("-", |x| x.name());
            let cell = c.cell.map_or("-".to_string(), |x| x.to_string());
            let pi = c.pi.map_or("-".to_string(), |x| x.to_string());
            let mode = match c.mode {
                depthzero::engine::Mode::Table => "table",
                depthzero::engine::Mode::Oracle => "oracle",
            };
            writeln!(
                out,
                "{}\t{}\t{branch}\t{}\t{cell}\t{pi}\t{mode}\t{}\t{}\t{}\t{}",
                b.suite, b.q, c.check, c.lhs, c.rhs, c.residual, c.pass
            )
            .unwrap();
        }
    }
    out
}

fn render_json(blocks: &[SuiteBlock]) -> Result<String, Failure> {
    let mut s =
        serde_json::to_string_pretty(blocks).map_err(|e| Failure::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn emit(text: &str, path: Option<&Path>) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::Config(format!("cannot write {}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Internal(format!("stdout: {e}"))),
    }
}

fn verify(args: &VerifyArgs) -> Result<bool, Failure> {
    let blocks = run_blocks(args)?;
    let text = match args.format {
        Format::Tsv => render_tsv(&blocks),
        Format::Json => render_json(&blocks)?,
    };
    emit(&text, args.output.as_deref())?;
    let mut all = true;
    for b in &blocks {
        let failed = b.failures().count();
        all &= failed == 0;
        let branch = b
            .branch
            .map_or(String::new(), |x| format!(" [{}]", x.name()));
        eprintln!(
            "{} q={}{branch}: {} checks, {failed} failed",
            b.suite,
            b.q,
            b.cells.len()
        );
    }
    Ok(all)
}

fn dump(args: &DumpArgs) -> Result<(), Failure> {
    let DumpFormat::Tsv = args.format;
    let branches = args.erratum_branch.branches();
    for b in &branches {
        let dir = if branches.len() > 1 {
            args.output.join(b.name())
        } else {
            args.output.clone()
        };
        fs::create_dir_all(&dir)
            .map_err(|e| Failure::Config(format!("cannot create {}: {e}", dir.display())))?;
        let tables = dump_tables(args.n_max, *b).map_err(|e| Failure::Internal(e.to_string()))?;
        for t in tables {
            let path = dir.join(&t.name);
            fs::write(&path, &t.contents)
                .map_err(|e| Failure::Config(format!("cannot write {}: {e}", path.display())))?;
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(())
}

/// JSON schema of the `verify --format json` report.
fn report_schema() -> serde_json::Value {
    let rational = json!({ "type": "string", "pattern": "^-?[0-9]+/[0-9]+$" });
    let quadg = json!({
        "type": "object",
        "description": "a + b*g with g the quadratic Gauss sum, g^2 = gsq",
        "properties": { "a": rational, "b": rational, "gsq": rational },
        "required": ["a", "b", "gsq"],
        "additionalProperties": false
    });
    let branch = json!({ "enum": ["corrected", "printed"] });
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "depthzero verify report",
        "type": "array",
        "items": {
            "type": "object",
            "properties": {
                "suite": { "enum": Suite::ALL.iter().map(|s| s.name()).collect::<Vec<_>>() },
                "q": { "enum": SUPPORTED_Q },
                "branch": branch,
                "cells": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "properties": {
                            "check": { "type": "string" },
                            "cell": {
                                "type": "object",
                                "properties": {
                                    "z": { "enum": ["s0", "s1", "s2", "t0", "t1", "t2", "t3"] },
                                    "n": { "type": "integer" },
                                    "nu": { "enum": ["+", "−"] }
                                },
                                "required": ["z", "n", "nu"]
                            },
                            "q": { "type": "integer" },
                            "pi": { "type": "string", "pattern": "^pi\\([01],(theta|\\+|−)\\)$" },
                            "lhs": quadg,
                            "rhs": quadg,
                            "residual": quadg,
                            "pass": { "type": "boolean" },
                            "mode": { "enum": ["table", "oracle"] },
                            "branch": branch
                        },
                        "required": ["check", "q", "lhs", "rhs", "residual", "pass", "mode"]
                    }
                }
            },
            "required": ["suite", "q", "cells"]
        }
    })
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    configure_threads()?;
    match cli.command {
        Command::Verify(args) => Ok(if verify(&args)? {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        }),
        Command::DumpTables(args) => dump(&args).map(|_| ExitCode::SUCCESS),
        Command::ReportSchema => {
            let s = serde_json::to_string_pretty(&report_schema())
                .map_err(|e| Failure::Internal(e.to_string()))?;
            emit(&(s + "\n"), None)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            match &f {
                Failure::Config(m) => eprintln!("invalid configuration: {m}"),
                Failure::Internal(m) => eprintln!("internal error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}

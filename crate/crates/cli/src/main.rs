//! `quiver`: construct, transform, inspect and verify points of cyclic quiver
//! varieties.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage
//! or input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use quiver_core::checks::{
    bookkeeping_trial, equivariance_trial, lemma_h_trial, rewrite_trial, trantrwv_trial, TrialOutcome,
};
use quiver_core::group::{apply_sequence, parse_generators};
use quiver_core::invariants::invariant_vector;
use quiver_core::io::{invariants_to_json, read_point, write_point};
use quiver_core::lattice::reduce_to_cm;
use quiver_core::reflection::reflect_word;
use quiver_core::rewrite::{parse_path, RewriteKernel};
use quiver_core::solver::{solve_point_with, SolverConfig};
use quiver_core::{DimVector, Point, QuiverError, Setting, WeylWord, C64};

pub const REPORT_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "quiver", version, about = "Cyclic quiver varieties: points, group action, reflections, invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for a point and write it to a point file.
    Gen {
        #[arg(long)]
        m: usize,
        /// Comma-separated complex literals, e.g. `1+0.5j,-0.3-1j`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Comma-separated dimensions α_0,…,α_{m-1}.
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Apply generators `psi(k,re,im);phi(k,re,im);…`, first one first.
    Act {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Apply reflections at the listed vertices, first one first.
    Reflect {
        #[arg(long)]
        word: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the invariant vector of a point file.
    Inv {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Reflection word taking (1, α) to a Calogero–Moser vector.
    Reduce {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        alpha: String,
    },
    /// Normal form of `w·P·v`, or of `Tr P` with `--trace`.
    Rewrite {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        path: String,
        #[arg(long)]
        trace: bool,
    },
    /// Seeded numerical identity checks; one JSON report line per suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Equivariance,
    #[value(name = "lemmaH")]
    LemmaH,
    Rewrite,
    Trantrwv,
    Bookkeeping,
    All,
}

impl Suite {
    const ORDER: [Suite; 5] = [Suite::Equivariance, Suite::LemmaH, Suite::Rewrite, Suite::Trantrwv, Suite::Bookkeeping];

    fn name(self) -> &'static str {
        match self {
            Suite::Equivariance => "equivariance",
            Suite::LemmaH => "lemmaH",
            Suite::Rewrite => "rewrite",
            Suite::Trantrwv => "trantrwv",
            Suite::Bookkeeping => "bookkeeping",
            Suite::All => "all",
        }
    }

    fn needs_reflections(self) -> bool {
        matches!(self, Suite::Equivariance | Suite::LemmaH | Suite::Bookkeeping)
    }
}

#[derive(Debug, Clone, Copy)]
struct RunConfig {
    certify: f64,
    compare: f64,
    symbolic: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { certify: 1e-10, compare: 1e-6, symbolic: 1e-7 }
    }
}

impl RunConfig {
    fn tolerance(&self, suite: Suite) -> f64 {
        match suite {
            Suite::Equivariance => self.compare,
            Suite::Rewrite => self.symbolic,
            Suite::LemmaH | Suite::Trantrwv => 1e-8,
            Suite::Bookkeeping => 1e-9,
            Suite::All => unreachable!("expanded before use"),
        }
    }
}

#[derive(Debug, Serialize)]
struct Report {
    format_version: u32,
    suite: &'static str,
    m: usize,
    n: i64,
    seed: u64,
    trials: usize,
    /// `null` when a trial could not be evaluated.
    max_deviation: Option<f64>,
    tolerance: f64,
    pass: bool,
    failures: Vec<String>,
}

enum Failure {
    Usage(String),
    Checks,
}

impl From<QuiverError> for Failure {
    fn from(e: QuiverError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// `a`, `bj`, `a+bj`, `a-bj`, with optional exponents.
fn parse_complex(text: &str) -> Result<C64, Failure> {
    let s = text.trim();
    let bad = || usage(format!("bad complex literal `{s}`"));
    let num = |t: &str| t.parse::<f64>().map_err(|_| bad());
    let Some(body) = s.strip_suffix('j') else {
        return Ok(C64::new(num(s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split =
        (1..bytes.len()).rev().find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    match split {
        None => Ok(C64::new(0.0, num(body)?)),
        Some(i) => Ok(C64::new(num(&body[..i])?, num(&body[i..])?)),
    }
}

fn parse_list<T>(text: &str, what: &str, f: impl Fn(&str) -> Result<T, Failure>) -> Result<Vec<T>, Failure> {
    let out: Vec<T> = text.split(',').map(|t| f(t.trim())).collect::<Result<_, _>>()?;
    if out.is_empty() {
        return Err(usage(format!("empty {what}")));
    }
    Ok(out)
}

fn parse_alpha(text: &str, m: usize) -> Result<Vec<i64>, Failure> {
    let alpha = parse_list(text, "alpha", |t| t.parse::<i64>().map_err(|_| usage(format!("bad dimension `{t}`"))))?;
    if alpha.len() != m {
        return Err(usage(format!("alpha has {} entries but m = {m}", alpha.len())));
    }
    Ok(alpha)
}

fn parse_reflections(text: &str) -> Result<WeylWord, Failure> {
    let letters = text
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| usage(format!("bad vertex `{t}` (reflections exist only at 0..m-1)"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(WeylWord::cyclic(&letters))
}

fn run_trial(suite: Suite, m: usize, n: i64, seed: u64, tol: f64) -> TrialOutcome {
    match suite {
        Suite::Equivariance => equivariance_trial(m, n, seed, 2, tol),
        Suite::LemmaH => lemma_h_trial(m, n, seed, tol),
        Suite::Rewrite => rewrite_trial(m, n, seed, 1, tol),
        Suite::Trantrwv => trantrwv_trial(m, n, seed, tol),
        Suite::Bookkeeping => bookkeeping_trial(m, n, seed, tol),
        Suite::All => unreachable!("expanded before use"),
    }
}

fn run_suite(suite: Suite, m: usize, n: i64, trials: usize, seed: u64, cfg: &RunConfig) -> Report {
    let tol = cfg.tolerance(suite);
    let outcomes: Vec<TrialOutcome> =
        (0..trials).into_par_iter().map(|t| run_trial(suite, m, n, seed + t as u64, tol)).collect();
    let worst = outcomes.iter().map(|o| o.deviation).fold(0.0, f64::max);
    let failures = outcomes
        .iter()
        .enumerate()
        .filter(|(_, o)| !o.pass)
        .map(|(t, o)| format!("trial {t}: {}", o.note.as_deref().unwrap_or("deviation above tolerance")))
        .collect();
    Report {
        format_version: REPORT_VERSION,
        suite: suite.name(),
        m,
        n,
        seed,
        trials,
        max_deviation: worst.is_finite().then_some(worst),
        tolerance: tol,
        pass: outcomes.iter().all(|o| o.pass),
        failures,
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    let cfg = RunConfig::default();
    match cmd {
        Command::Gen { m, lambda, alpha, seed, out } => {
            let lam = parse_list(&lambda, "lambda", parse_complex)?;
            if lam.len() != m {
                return Err(usage(format!("lambda has {} entries but m = {m}", lam.len())));
            }
            let setting = Setting::new(lam, &parse_alpha(&alpha, m)?)?;
            let solved = solve_point_with(&setting, seed, &SolverConfig { tol: cfg.certify, ..Default::default() })?;
            write_point(&out, &solved.point)?;
            println!(
                "residual {:.3e} after {} iterations, {} restarts",
                solved.residual, solved.iterations, solved.restarts_used
            );
        }
        Command::Act { word, input, out } => {
            let gens = parse_generators(&word)?;
            let p: Point = read_point(&input)?;
            let q = apply_sequence(&gens, &p)?;
            write_point(&out, &q)?;
            println!("residual {:.3e}", q.moment_residual());
        }
        Command::Reflect { word, input, out } => {
            let w = parse_reflections(&word)?;
            let p: Point = read_point(&input)?;
            let q = reflect_word(&w, &p)?;
            write_point(&out, &q)?;
            println!("{} residual {:.3e}", q.setting.beta, q.moment_residual());
        }
        Command::Inv { input } => {
            let p: Point = read_point(&input)?;
            println!("{}", invariants_to_json(&invariant_vector(&p))?);
        }
        Command::Reduce { m, alpha } => {
            let red = reduce_to_cm(&DimVector::framed(&parse_alpha(&alpha, m)?))?;
            let out = serde_json::json!({ "word": red.word.to_string(), "n": red.n });
            println!("{out}");
        }
        Command::Rewrite { m, path, trace } => {
            if m == 0 {
                return Err(usage("m must be positive"));
            }
            let word = parse_path(&path, m)?;
            let mut kernel = RewriteKernel::new(m);
            let expr = if trace { kernel.normalize_trace(&word)? } else { kernel.normalize_wv(&word)? };
            println!("{expr}");
        }
        Command::Verify { suite, m, n, trials, seed } => {
            if m == 0 || n < 1 {
                return Err(usage("verify needs m ≥ 1 and n ≥ 1"));
            }
            let suites: Vec<Suite> = if suite == Suite::All { Suite::ORDER.to_vec() } else { vec![suite] };
            if m < 2 && suites.iter().any(|s| s.needs_reflections()) {
                return Err(usage(format!("suite {} needs m ≥ 2 (no reflection at a loop vertex)", suite.name())));
            }
            let mut all_pass = true;
            for s in suites {
                let report = run_suite(s, m, n, trials, seed, &cfg);
                all_pass &= report.pass;
                println!("{}", serde_json::to_string(&report).expect("report serializes"));
            }
            if !all_pass {
                return Err(Failure::Checks);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

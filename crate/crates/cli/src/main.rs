mod export;
mod suites;

use std::io::{ErrorKind, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use octospin::{Family, Mode, Rational, Scalar};

#[derive(Parser)]
#[command(name = "octospin", version, about = "Octonionic spin representations: checks and exports")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Arithmetic used by every computation.
    #[arg(long, global = true, default_value = "exact")]
    mode: Mode,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and report residuals.
    Verify {
        /// A family name or `all`.
        #[arg(long, default_value = "all", value_parser = parse_filter)]
        family: FamilyFilter,
        /// Run only suites whose name starts with this.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        trials: u32,
        #[arg(long, env = "OCTOSPIN_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Basis matrices and structure constants of a family.
    Basis {
        #[arg(long)]
        family: Family,
    },
    /// Octonion multiplication table as (i, j, k, c) triples.
    Multable,
    /// Dimension of every family.
    Dims,
    /// Orbit invariants of a spinor read from JSON (`-` for stdin).
    Classify {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        input: PathBuf,
    },
    /// Stabilizer subalgebra of a spinor read from JSON (`-` for stdin).
    Stabilizer {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        input: PathBuf,
    },
}

/// `None` selects every family.
#[derive(Clone, Copy)]
struct FamilyFilter(Option<Family>);

fn parse_filter(s: &str) -> Result<FamilyFilter, String> {
    if s == "all" {
        return Ok(FamilyFilter(None));
    }
    s.parse()
        .map(|f| FamilyFilter(Some(f)))
        .map_err(|e: octospin::Error| e.to_string())
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn verify<T: Scalar>(
    family: Option<Family>,
    prefix: Option<&str>,
    trials: usize,
    seed: u64,
) -> Result<(Value, Option<String>, bool)> {
    let selected: Vec<_> = suites::all::<T>()
        .into_iter()
        .filter(|s| family.is_none() || s.family == family)
        .filter(|s| prefix.is_none_or(|p| s.name.starts_with(p)))
        .collect();
    if selected.is_empty() {
        bail!("no suite matches {:?}", prefix.unwrap_or_default());
    }
    let reports = suites::run(&selected, seed, trials);
    let ok = reports.iter().all(|r| r.passed);
    let rows: Vec<Value> = reports
        .iter()
        .map(|r| {
            let mut v = json!({
                "name": r.name,
                "topic": r.topic,
                "trials": r.trials,
                "max_residual": r.max_residual,
                "passed": r.passed,
            });
            if let Some(e) = &r.error {
                v["error"] = Value::from(e.as_str());
            }
            v
        })
        .collect();
    let doc = json!({
        "family": family.map_or("all", Family::name),
        "mode": T::MODE.name(),
        "seed": seed,
        "trials": trials,
        "passed": ok,
        "suites": rows,
    });
    let mut text = String::new();
    for r in &reports {
        text += &format!(
            "{} {:<20} {:<24} trials={:<4} max_residual={:e}{}\n",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.topic,
            r.trials,
            r.max_residual,
            r.error.as_ref().map_or(String::new(), |e| format!(" error: {e}")),
        );
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    text += &format!("{passed} of {} suites passed\n", reports.len());
    Ok((doc, Some(text), ok))
}

macro_rules! by_mode {
    ($mode:expr, $f:ident($($arg:expr),*)) => {
        match $mode {
            Mode::Exact => $f::<Rational>($($arg),*),
            Mode::Float => $f::<f64>($($arg),*),
        }
    };
}

fn classify_from<T: Scalar>(f: Family, text: &str) -> Result<Value> {
    export::classify_json(f, &export::read_spinor::<T>(text)?)
}

fn stabilizer_from<T: Scalar>(f: Family, text: &str) -> Result<Value> {
    export::stabilizer_json(f, &export::read_spinor::<T>(text)?)
}

fn execute(cli: &Cli) -> Result<(String, bool)> {
    let (doc, text, ok) = match &cli.command {
        Command::Verify {
            family,
            suite,
            trials,
            seed,
        } => by_mode!(cli.mode, verify(family.0, suite.as_deref(), *trials as usize, *seed))?,
        Command::Basis { family } => (by_mode!(cli.mode, basis_doc(*family))?, None, true),
        Command::Multable => (export::multable(), None, true),
        Command::Dims => (export::dims(), None, true),
        Command::Classify { family, input } => {
            let s = read_input(input)?;
            (by_mode!(cli.mode, classify_from(*family, &s))?, None, true)
        }
        Command::Stabilizer { family, input } => {
            let s = read_input(input)?;
            (by_mode!(cli.mode, stabilizer_from(*family, &s))?, None, true)
        }
    };
    let out = match (cli.format, text) {
        (Format::Text, Some(t)) => t,
        (Format::Text, None) => serde_json::to_string_pretty(&doc)? + "\n",
        (Format::Json, _) => serde_json::to_string(&doc)? + "\n",
    };
    Ok((out, ok))
}

fn basis_doc<T: Scalar>(f: Family) -> Result<Value> {
    export::basis::<T>(f)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok((out, ok)) => {
            let written = match &cli.output {
                Some(p) => std::fs::write(p, &out).with_context(|| format!("writing {}", p.display())),
                None => match std::io::stdout().lock().write_all(out.as_bytes()) {
                    Err(e) if e.kind() == ErrorKind::BrokenPipe => Ok(()),
                    r => r.context("writing stdout"),
                },
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::FAILURE;
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

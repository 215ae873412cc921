//! `qcl`: command-line surface over the quregister engine. Subcommands
//! compute probability-values, evaluate formulas, test consequences,
//! run the law suite, and cross-check kernels against the dense oracle.
//!
//! Exit codes: 0 pass, 1 unexpected verdict, 2 usage or formula parse
//! error, 3 input file error.

use std::fmt::Write as _;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qcl_core::consts::DEFAULT_BUDGET;
use qcl_core::laws::run_suite;
use qcl_core::semantics::{
    consequence_at, evaluate, prob_of, search_counterexample, Realization,
};
use qcl_core::syntax::parse;
use qcl_core::xcheck::run_gate_xcheck;
use qcl_core::Formula;

const DEFAULT_SEED: u64 = 42;

#[derive(Parser)]
#[command(name = "qcl", version, about = "Quregister logic engine and law checker")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the probability-value of a formula at a realization
    Prob {
        /// Formula text, e.g. "p and (q or not r)"
        formula: String,
        /// Realization JSON file assigning a qubit to every atom
        #[arg(long)]
        real: PathBuf,
    },
    /// Print the quregister meaning of a formula
    Eval {
        formula: String,
        #[arg(long)]
        real: PathBuf,
        /// Also print the full amplitude list
        #[arg(long)]
        amps: bool,
    },
    /// Test Prob(left) <= Prob(right), at one realization or by search
    Check {
        left: String,
        right: String,
        /// Single realization to test at; omit to search for a
        /// counterexample instead
        #[arg(long)]
        real: Option<PathBuf>,
        /// Sample budget for the search
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Run the built-in law suite
    Laws {
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Emit the report as JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Compare the structured kernels against the dense oracle
    GateXcheck {
        #[arg(long, default_value_t = 8)]
        max_width: usize,
        /// Random unit states per gate instance
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

enum Failure {
    /// Bad formula or usage; exit 2.
    Usage(String),
    /// Unreadable or invalid input file; exit 3.
    File(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::File(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::File(m) => m,
        }
    }
}

fn parse_formula(text: &str) -> Result<Formula, Failure> {
    parse(text).map_err(|e| Failure::Usage(format!("{e} in formula {text:?}")))
}

fn load_realization(path: &Path) -> Result<Realization, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::File(format!("cannot read {}: {e}", path.display())))?;
    Realization::from_json_str(&text)
        .map_err(|e| Failure::File(format!("{}: {e}", path.display())))
}

/// Formats with `digits` significant digits in plain decimal.
fn sig(x: f64, digits: i32) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.prec$}", prec = digits as usize - 1);
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (digits - 1 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

fn prob12(x: f64) -> String {
    sig(x, 12)
}

fn eval_error(e: qcl_core::Error) -> Failure {
    // Unassigned atoms mean the realization file does not cover the
    // formula; everything else at this stage is internal.
    Failure::File(e.to_string())
}

fn cmd_prob(out: &mut String, formula: &str, real: &Path) -> Result<u8, Failure> {
    let f = parse_formula(formula)?;
    let r = load_realization(real)?;
    let p = prob_of(&f, &r).map_err(eval_error)?;
    let _ = writeln!(out, "{}", prob12(p));
    Ok(0)
}

fn cmd_eval(out: &mut String, formula: &str, real: &Path, amps: bool) -> Result<u8, Failure> {
    let f = parse_formula(formula)?;
    let r = load_realization(real)?;
    let meaning = evaluate(&f, &r).map_err(eval_error)?;
    let _ = writeln!(out, "width: {}", meaning.n_qubits());
    if amps {
        let width = meaning.n_qubits();
        for (j, a) in meaning.amplitudes().iter().enumerate() {
            let _ = writeln!(out, "{j:0width$b} {} {}", prob12(a.re), prob12(a.im));
        }
    }
    Ok(0)
}

fn cmd_check_at(
    out: &mut String,
    left: &Formula,
    right: &Formula,
    real: &Path,
) -> Result<u8, Failure> {
    let r = load_realization(real)?;
    let v = consequence_at(left, right, &r).map_err(eval_error)?;
    let _ = writeln!(out, "Prob(left) = {}", prob12(v.prob_left));
    let _ = writeln!(out, "Prob(right) = {}", prob12(v.prob_right));
    let _ = writeln!(out, "margin = {}", prob12(v.margin));
    let _ = writeln!(
        out,
        "verdict: {}",
        if v.holds_at_sample { "holds" } else { "refuted" }
    );
    Ok(0)
}

fn cmd_check_search(
    out: &mut String,
    left: &Formula,
    right: &Formula,
    budget: usize,
    seed: u64,
) -> u8 {
    let report = search_counterexample(left, right, budget, seed);
    match report.counterexample {
        Some(c) => {
            let source = match c.source {
                qcl_core::semantics::WitnessSource::Pinned => "pinned",
                qcl_core::semantics::WitnessSource::Grid => "grid",
                qcl_core::semantics::WitnessSource::Sampled => "sampled",
            };
            let _ = writeln!(
                out,
                "counterexample found (source: {source}, samples: {})",
                report.samples
            );
            let _ = writeln!(out, "margin = {}", prob12(c.margin));
            let _ = writeln!(out, "realization: {}", c.realization.to_json_string());
        }
        None => {
            let _ = writeln!(
                out,
                "no counterexample in {} samples (absence is not a proof)",
                report.samples
            );
            let _ = writeln!(out, "worst margin = {:.3e}", report.worst_margin);
        }
    }
    0
}

fn cmd_laws(out: &mut String, budget: usize, seed: u64, json: bool) -> u8 {
    let report = run_suite(budget, seed);
    if json {
        let _ = writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    } else {
        for law in &report.laws {
            let _ = writeln!(
                out,
                "{:<28} {:<26} samples={:<7} worst={:<10} {:7.1} ms",
                law.id,
                law.verdict.to_string(),
                law.samples,
                format!("{:.3e}", law.worst_margin),
                law.wall_ms,
            );
        }
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "engine {} seed {} budget {}",
            report.engine_version, report.seed, report.budget
        );
        let _ = writeln!(out, "{}", if report.pass { "pass" } else { "FAIL" });
    }
    u8::from(!report.pass)
}

fn cmd_gate_xcheck(
    out: &mut String,
    max_width: usize,
    trials: usize,
    seed: u64,
) -> Result<u8, Failure> {
    let report = run_gate_xcheck(max_width, trials, seed)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    for row in &report.rows {
        let _ = writeln!(
            out,
            "{:<16} width={} trials={} max_dev={:.3e}",
            row.gate.to_string(),
            row.width,
            row.trials,
            row.max_deviation,
        );
    }
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "max deviation = {:.3e} (tolerance {:.0e})",
        report.max_deviation, report.tolerance
    );
    let _ = writeln!(out, "{}", if report.pass { "pass" } else { "FAIL" });
    Ok(u8::from(!report.pass))
}

fn run(out: &mut String, cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Prob { formula, real } => cmd_prob(out, &formula, &real),
        Command::Eval { formula, real, amps } => cmd_eval(out, &formula, &real, amps),
        Command::Check {
            left,
            right,
            real,
            budget,
            seed,
        } => {
            let left = parse_formula(&left)?;
            let right = parse_formula(&right)?;
            match real {
                Some(path) => cmd_check_at(out, &left, &right, &path),
                None => Ok(cmd_check_search(out, &left, &right, budget, seed)),
            }
        }
        Command::Laws { budget, seed, json } => Ok(cmd_laws(out, budget, seed, json)),
        Command::GateXcheck {
            max_width,
            trials,
            seed,
        } => cmd_gate_xcheck(out, max_width, trials, seed),
    }
}

/// Writes the buffered report in one shot. A reader that hangs up early
/// (`qcl laws --json | head`) is fine; other write errors are not.
fn flush_stdout(out: &str) -> Result<(), Failure> {
    let mut stdout = io::stdout().lock();
    stdout
        .write_all(out.as_bytes())
        .and_then(|()| stdout.flush())
        .or_else(|e| match e.kind() {
            io::ErrorKind::BrokenPipe => Ok(()),
            _ => Err(Failure::File(format!("cannot write to stdout: {e}"))),
        })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(&mut out, cli).and_then(|code| {
        flush_stdout(&out)?;
        Ok(code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

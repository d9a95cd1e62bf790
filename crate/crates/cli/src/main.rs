//! `orbitbell`: classical and quantum bounds for group-orbit Bell scenarios.
//!
//! Exit status: 0 success, 1 internal inconsistency, 2 config error,
//! 3 budget exceeded, 4 verification failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use orbitbell::orbit::{seed_constraint_rank, seed_constraints, solve_seed};
use orbitbell::scenario::{
    exit_code, round_sig, BoundsDocument, CheckStatus, Scenario, ScenarioConfig,
};
use orbitbell::Error;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "orbitbell",
    version,
    about = "Bell inequalities from group orbits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the seed equations for S_n.
    SolveSeed {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Classical and quantum bounds for the configured orbits.
    Bounds(Run),
    /// Two-orbit bounds {O(base), O(g̃)} for every g̃ in the group.
    Scan {
        #[command(flatten)]
        run: Run,
        /// Write the scan table as CSV.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Run every consistency check on the configured scenario.
    Verify(Run),
}

#[derive(Args)]
struct Output {
    /// Write the JSON report here; `-` prints it instead of the summary.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct Run {
    #[arg(long, value_name = "FILE")]
    config: PathBuf,
    /// Tolerance of the consistency checks.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Maximum number of strategies the classical enumeration may visit.
    #[arg(long)]
    budget: Option<u64>,
    #[command(flatten)]
    out: Output,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self {
            code: exit_code(&e) as u8,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: 2,
        message: format!("cannot write {}: {e}", path.display()),
    }
}

impl Run {
    fn scenario(&self) -> Result<Scenario, Failure> {
        let mut config = ScenarioConfig::load(&self.config)?;
        if self.tolerance.is_some() {
            config.tolerance = self.tolerance;
        }
        if self.budget.is_some() {
            config.budget = self.budget;
        }
        Ok(Scenario::new(config)?)
    }
}

/// Prints `summary`, or the JSON when `--json -`; writes the JSON to a file otherwise.
fn emit(out: &Output, json: &str, summary: &str) -> Result<(), Failure> {
    match &out.json {
        Some(p) if p.as_os_str() == "-" => println!("{json}"),
        Some(p) => {
            fs::write(p, format!("{json}\n")).map_err(|e| io_failure(p, e))?;
            print!("{summary}");
        }
        None => print!("{summary}"),
    }
    Ok(())
}

fn fmt_vec(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| format!("{x:.9}")).collect();
    format!("[{}]", parts.join(", "))
}

fn solve(n: usize, out: &Output) -> Result<(), Failure> {
    let seed = solve_seed::<f64>(n)?;
    let x = seed.ambient.clone().expect("ambient seed");
    let residual = seed_constraints(&x)
        .iter()
        .fold(0.0f64, |a, r| a.max(r.abs()));
    let rank = seed_constraint_rank(&x)?;
    let r = |xs: &[f64]| xs.iter().map(|&v| round_sig(v, 15)).collect::<Vec<_>>();
    let doc = json!({
        "schema_version": 1,
        "n": n,
        "ambient": r(&x),
        "coordinates": r(&seed.coordinates),
        "residual": round_sig(residual, 6),
        "constraint_rank": rank,
    });
    let summary = format!(
        "seed for S_{n}\n  ambient      {}\n  coordinates  {}\n  residual     {residual:.3e}\n  rank         {rank}\n",
        fmt_vec(&x),
        fmt_vec(&seed.coordinates)
    );
    emit(
        out,
        &serde_json::to_string_pretty(&doc).expect("json"),
        &summary,
    )
}

fn bounds(run: &Run) -> Result<(), Failure> {
    let doc: BoundsDocument = run.scenario()?.bounds_document()?;
    let shifts: Vec<&str> = doc
        .scenario
        .orbits
        .iter()
        .map(|s| s.cycles.as_str())
        .collect();
    let summary = format!(
        "S_{} with H = <{}>, orbits {:?}\n  classical  {}\n  quantum    {:.12}\n  margin     {:.3e}\n  violation  {}\n  orbit hash {}\n",
        doc.scenario.degree,
        doc.scenario.generator,
        shifts,
        doc.classical.bound,
        doc.quantum.bound,
        doc.margin,
        doc.violation,
        doc.scenario.orbit_hash
    );
    emit(&run.out, &doc.to_json(), &summary)
}

fn scan(run: &Run, csv: Option<&Path>) -> Result<(), Failure> {
    let result = run.scenario()?.run_scan()?;
    let mut summary = format!(
        "{:<14} {:>5} {:>9} {:>16} {:>12}  violation\n",
        "shift", "order", "classical", "quantum", "margin"
    );
    for row in &result.rows {
        summary.push_str(&format!(
            "{:<14} {:>5} {:>9} {:>16.12} {:>12.3e}  {}\n",
            row.shift.cycles,
            row.shift.order,
            row.classical,
            row.quantum,
            row.margin,
            row.violation
        ));
    }
    summary.push_str(&format!(
        "{} violating class(es); classes:\n",
        result.violating_classes
    ));
    for class in &result.classes {
        summary.push_str(&format!(
            "  {:?}{}\n",
            class.members,
            if class.violation { "  violating" } else { "" }
        ));
    }
    if let Some(path) = csv {
        fs::write(path, result.to_csv()).map_err(|e| io_failure(path, e))?;
    }
    emit(&run.out, &result.to_json(), &summary)
}

fn verify(run: &Run) -> Result<(), Failure> {
    let ledger = run.scenario()?.run_verify();
    let mut summary = String::new();
    for check in &ledger.checks {
        let status = match check.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skip => "SKIP",
        };
        let value = check.value.map(|v| format!(" {v:.3e}")).unwrap_or_default();
        summary.push_str(&format!(
            "{status} {:<30}{value}  {}\n",
            check.name, check.detail
        ));
    }
    emit(&run.out, &ledger.to_json(), &summary)?;
    if ledger.passed {
        Ok(())
    } else {
        let failed: Vec<&str> = ledger.failures().map(|c| c.name.as_str()).collect();
        Err(Failure {
            code: 4,
            message: format!("verification failed: {}", failed.join(", ")),
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::SolveSeed { n, out } => solve(*n, out),
        Command::Bounds(run) => bounds(run),
        Command::Scan { run, csv } => scan(run, csv.as_deref()),
        Command::Verify(run) => verify(run),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

//! `twinpara`: validate manifold documents, report on them, and check the
//! family claims over a parameter grid.
//!
//! Exit codes: 0 success, 2 parse error, 3 validation failure, 4 check failure.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use twinpara_core::family::{self, parse_grid, perturbed_tables, tables::paper_tables, GridReport, SELF_TEST_ENTRY};
use twinpara_core::{build_family, Error, Execution, FamilyParams, ManifoldDocument, Report, Scalar, WManifold};

const EXIT_PARSE: u8 = 2;
const EXIT_INVALID: u8 = 3;
const EXIT_CHECK: u8 = 4;

#[derive(Parser)]
#[command(name = "twinpara", version, about = "Exact analysis of almost paracomplex Lie algebras and their twin metrics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a manifold document describes a valid structure.
    Validate { file: PathBuf },
    /// Classification, scalar invariants and the verification suite.
    Report {
        /// Manifold document (omit with --family).
        #[arg(required_unless_present = "family", conflicts_with = "family")]
        file: Option<PathBuf>,
        /// Use the family member with parameters λ1 λ2 ε instead of a file.
        #[arg(long, num_args = 3, value_names = ["L1", "L2", "EPS"], allow_hyphen_values = true)]
        family: Option<Vec<String>>,
        #[arg(long)]
        json: bool,
    },
    /// Check the family claims and component tables over a grid.
    Theorem {
        /// `default`, `diagonal`, `anti-diagonal`, or `L1:L2:E` with
        /// comma-separated rationals in each part.
        #[arg(long, default_value = "default", allow_hyphen_values = true)]
        grid: String,
        /// Flip the sign of one expected entry and confirm it is caught.
        #[arg(long)]
        self_test: bool,
        /// Evaluate grid points one at a time.
        #[arg(long)]
        sequential: bool,
        #[arg(long)]
        json: bool,
    },
}

/// A failure with its exit code.
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
}

/// Malformed input exits 2; everything else that stops construction exits 3.
fn classify(e: Error) -> Failure {
    let code = match e {
        Error::Json(_) | Error::Document(_) | Error::Rational(_) | Error::Epsilon(_) => EXIT_PARSE,
        _ => EXIT_INVALID,
    };
    Failure::new(code, e.to_string())
}

fn read_document(path: &PathBuf) -> Result<ManifoldDocument, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    ManifoldDocument::parse(&text).map_err(classify)
}

fn load(path: &PathBuf) -> Result<WManifold, Failure> {
    read_document(path)?.to_manifold().map_err(classify)
}

fn family_params(values: &[String]) -> Result<FamilyParams, Failure> {
    let parsed = values
        .iter()
        .map(|v| v.parse::<Scalar>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(classify)?;
    let [l1, l2, e]: [Scalar; 3] = parsed.try_into().expect("three values");
    FamilyParams::new(l1, l2, e).map_err(classify)
}

fn validate(file: &PathBuf) -> Result<(), Failure> {
    let m = load(file)?;
    println!("valid: dim {}, basis {}", m.dim(), m.algebra().labels().join(" "));
    Ok(())
}

fn report(file: Option<&PathBuf>, family: Option<&[String]>, as_json: bool) -> Result<(), Failure> {
    let (source, m) = match (file, family) {
        (_, Some(values)) => {
            let p = family_params(values)?;
            (format!("family {p}"), build_family(&p).map_err(classify)?)
        }
        (Some(path), None) => (path.display().to_string(), load(path)?),
        (None, None) => unreachable!("clap requires a file or --family"),
    };
    let r = Report::build(source, &m).map_err(classify)?;
    if as_json {
        println!("{}", r.to_json());
    } else {
        print!("{}", r.to_text());
    }
    if r.all_passed {
        Ok(())
    } else {
        Err(Failure::new(EXIT_CHECK, "some checks failed"))
    }
}

fn print_grid(grid: &GridReport) {
    let failures = grid.failures();
    println!(
        "points: {}  checks: {}  failing checks: {}",
        grid.points.len(),
        grid.check_count(),
        failures.len()
    );
    for f in &failures {
        let scope = if f.at_all_points() { "all points" } else { "some points" };
        println!(
            "FAIL {} at {}/{} ({scope}), e.g. {}",
            f.name, f.failed_points, f.total_points, f.example
        );
        for (item, n) in &f.items {
            println!("    {item} ({n} points)");
        }
    }
    for note in grid.notes() {
        println!("note: {note}");
    }
}

fn theorem(grid_spec: &str, self_test: bool, sequential: bool, as_json: bool) -> Result<(), Failure> {
    let points = parse_grid(grid_spec).map_err(classify)?;
    let exec = if sequential { Execution::Sequential } else { Execution::Parallel };
    let tables = if self_test { perturbed_tables() } else { paper_tables() };
    let grid = family::sweep_with(&points, &tables, exec);
    let caught = grid
        .failures()
        .iter()
        .any(|f| f.items.iter().any(|(item, _)| item == SELF_TEST_ENTRY));
    if as_json {
        let out = json!({
            "grid": grid_spec,
            "points": grid.points.len(),
            "checks": grid.check_count(),
            "all_passed": grid.all_passed(),
            "failures": grid.failures(),
            "notes": grid.notes(),
            "self_test": self_test.then_some(json!({ "entry": SELF_TEST_ENTRY, "detected": caught })),
        });
        println!("{}", serde_json::to_string_pretty(&out).expect("serializes"));
    } else {
        print_grid(&grid);
        if self_test {
            println!(
                "self-test: flipped {SELF_TEST_ENTRY} in table:R {}",
                if caught { "detected" } else { "NOT detected" }
            );
        }
    }
    if grid.all_passed() {
        Ok(())
    } else {
        Err(Failure::new(EXIT_CHECK, "theorem checks failed"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Report { file, family, json } => report(file.as_ref(), family.as_deref(), *json),
        Command::Theorem {
            grid,
            self_test,
            sequential,
            json,
        } => theorem(grid, *self_test, *sequential, *json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

//! End-to-end acceptance run: seven criteria, one line each, exact
//! comparisons throughout. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use twinpara_core::algebra::Violation;
use twinpara_core::corpus::{abelian, direct_sums};
use twinpara_core::family::tables::{eval_poly, paper_tables, Vals};
use twinpara_core::family::{
    build_family, claim_checks, default_grid, family_algebra, family_identity_checks, perturbed_tables,
    table_check, GridReport, SELF_TEST_ENTRY,
};
use twinpara_core::manifold::{build_manifold, diagonal_metric, pair_swap};
use twinpara_core::parallel::{map_items, Execution};
use twinpara_core::twin::{analyze, invariance_checks, structural_checks, Analysis, Check, VerificationReport};
use twinpara_core::{Error, FamilyParams, LieAlgebraModel, Scalar, WManifold};

const BUDGET: Duration = Duration::from_secs(10);

struct Outcome {
    passed: bool,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new(passed: bool, summary: impl Into<String>, details: Vec<String>) -> Self {
        Outcome {
            passed,
            summary: summary.into(),
            details,
        }
    }
}

fn report(checks: Vec<Check>) -> VerificationReport {
    VerificationReport {
        checks,
        notes: Vec::new(),
    }
}

/// Aggregates per-point reports into one outcome.
fn over_grid(points: &[FamilyParams], reports: Vec<VerificationReport>, what: &str) -> Outcome {
    let total: usize = reports.iter().map(|r| r.checks.len()).sum();
    let grid = GridReport {
        points: points.to_vec(),
        reports,
    };
    let failures = grid.failures();
    let details = failures
        .iter()
        .map(|f| {
            let scope = if f.at_all_points() { "all" } else { "some" };
            let mut line = format!(
                "{}: fails at {} of {} points ({scope}), e.g. {}",
                f.name, f.failed_points, f.total_points, f.example
            );
            if !f.items.is_empty() {
                let items: Vec<String> = f.items.iter().map(|(i, n)| format!("{i} x{n}")).collect();
                line.push_str(&format!("; entries: {}", items.join(", ")));
            }
            line
        })
        .collect();
    Outcome::new(
        failures.is_empty(),
        format!("{what}: {} checks over {} points, {} failing", total, points.len(), failures.len()),
        details,
    )
}

fn over_corpus(names: &[String], reports: Vec<VerificationReport>, what: &str) -> Outcome {
    let mut details = Vec::new();
    let mut total = 0;
    for (name, r) in names.iter().zip(&reports) {
        total += r.checks.len();
        for c in r.failures() {
            details.push(format!("{name}: {} at {:?} {}", c.name, c.counterexample, c.detail.clone().unwrap_or_default()));
        }
    }
    Outcome::new(
        details.is_empty(),
        format!("{what}: {total} checks over {} manifolds, {} failing", names.len(), details.len()),
        details,
    )
}

fn criterion_tables(grid: &[FamilyParams], analyses: &[Analysis]) -> Outcome {
    let tables = paper_tables();
    let reports = grid
        .iter()
        .zip(analyses)
        .map(|(p, a)| report(tables.iter().map(|t| table_check(t, a, p)).collect()))
        .collect();
    over_grid(grid, reports, "component tables")
}

fn criterion_spot_scalars(grid: &[FamilyParams], analyses: &[Analysis]) -> Outcome {
    let p = FamilyParams::from_ints(1, 2, 1).unwrap();
    let a = &analyses[grid.iter().position(|q| *q == p).expect("(1,2,1) on the grid")];
    let vals = Vals {
        l1: p.lambda1.clone(),
        l2: p.lambda2.clone(),
        e: p.epsilon.clone(),
    };
    let s = Scalar::from_int;
    let (side, twin) = (&a.side, &a.twin);
    // (name, stated value, value of the printed formula, computed value)
    let rows = [
        ("τ", s(-144), eval_poly(&[(48, 1, 0, 2, 0), (-48, 1, 0, 0, 2)], &vals), side.curvature.tau.clone()),
        ("τ̃", s(48), eval_poly(&[(16, 1, 1, 0, 2), (-16, 1, 1, 2, 0)], &vals), twin.curvature.tau.clone()),
        ("‖∇P‖", s(384), eval_poly(&[(-128, 1, 0, 2, 0), (128, 1, 0, 0, 2)], &vals), side.structure.snorm.clone()),
        ("R1221", s(-32), eval_poly(&[(-8, 1, 0, 0, 2)], &vals), side.curvature.r.at(&[0, 1, 1, 0]).clone()),
        ("θ1", s(16), eval_poly(&[(8, 1, 0, 0, 1)], &vals), side.structure.theta.at(&[0]).clone()),
        ("f1", s(-16), eval_poly(&[(-8, 1, 1, 0, 1)], &vals), side.structure.f.at(&[0]).clone()),
    ];
    let mut details = Vec::new();
    for (name, stated, formula, computed) in &rows {
        if stated != formula || stated != computed {
            details.push(format!("{name}: stated {stated}, formula gives {formula}, computed {computed}"));
        }
    }
    Outcome::new(
        details.is_empty(),
        format!("spot scalars at (1, 2, 1): {} of {} match", rows.len() - details.len(), rows.len()),
        details,
    )
}

fn criterion_claims(grid: &[FamilyParams], analyses: &[Analysis]) -> Outcome {
    let reports = grid.iter().zip(analyses).map(|(p, a)| report(claim_checks(a, p))).collect();
    over_grid(grid, reports, "claims (i)-(v)")
}

fn criterion_invariance(names: &[String], corpus: &[&Analysis]) -> Outcome {
    let reports = corpus.iter().map(|a| invariance_checks(a)).collect();
    over_corpus(names, reports, "interchange invariance")
}

fn criterion_structural(names: &[String], corpus: &[&Analysis]) -> Outcome {
    let reports = corpus
        .iter()
        .map(|a| {
            let mut r = structural_checks(a);
            let k = invariance_checks(a).get("K = A - ¼B").cloned().expect("K check present");
            r.checks.push(k);
            r
        })
        .collect();
    over_corpus(names, reports, "structural cross-checks")
}

fn criterion_family_identities(grid: &[FamilyParams], analyses: &[Analysis]) -> Outcome {
    let reports = grid
        .iter()
        .zip(analyses)
        .map(|(p, a)| report(family_identity_checks(a, p)))
        .collect();
    over_grid(grid, reports, "family identities")
}

fn criterion_negative_controls(grid: &[FamilyParams], analyses: &[Analysis]) -> Outcome {
    let mut details = Vec::new();

    // One constant of a valid algebra changed.
    let p = FamilyParams::from_ints(1, 2, 1).unwrap();
    let alg = family_algebra(&p).unwrap();
    let mut c = alg.constants().clone();
    c.set(&[0, 0, 3], Scalar::from_int(7));
    c.set(&[0, 3, 0], Scalar::from_int(-7));
    let broken = LieAlgebraModel::new(alg.labels().to_vec(), c).unwrap();
    let jacobi_found = broken
        .validate()
        .violations
        .iter()
        .any(|v| matches!(v, Violation::Jacobi { .. }));
    let g = diagonal_metric(&[1, 1, -1, -1].map(Scalar::from_int));
    let rejected = matches!(build_manifold(broken, pair_swap(4), g), Err(Error::InvalidAlgebra(_)));
    if !(jacobi_found && rejected) {
        details.push("Jacobi-violating algebra was accepted".to_string());
    }

    // The sign of one expected entry flipped.
    let perturbed = perturbed_tables();
    let table = |tables: &[twinpara_core::family::tables::Table]| {
        tables.iter().find(|t| t.name == "R").cloned().expect("R table")
    };
    let (plain_r, flipped_r) = (table(&paper_tables()), table(&perturbed));
    let mut plain_hits = 0;
    let mut flipped_hits = 0;
    for (p, a) in grid.iter().zip(analyses) {
        plain_hits += table_check(&plain_r, a, p).items.iter().filter(|i| *i == SELF_TEST_ENTRY).count();
        flipped_hits += table_check(&flipped_r, a, p).items.iter().filter(|i| *i == SELF_TEST_ENTRY).count();
    }
    if plain_hits != 0 || flipped_hits == 0 {
        details.push(format!(
            "perturbed {SELF_TEST_ENTRY} not isolated: {plain_hits} hits unperturbed, {flipped_hits} perturbed"
        ));
    }

    // g(Px, Py) != g(x, y).
    let bad_g = diagonal_metric(&[2, 1, -1, -1].map(Scalar::from_int));
    if !matches!(
        build_manifold(family_algebra(&p).unwrap(), pair_swap(4), bad_g),
        Err(Error::Incompatible { .. })
    ) {
        details.push("incompatible metric was accepted".to_string());
    }
    let ok = details.is_empty();
    Outcome::new(ok, format!("negative controls: {} of 3 rejected", 3 - details.len()), details)
}

fn main() -> ExitCode {
    let start = Instant::now();
    let grid = default_grid();
    let grid_analyses: Vec<Analysis> = map_items(&grid, Execution::Parallel, |p| {
        analyze(&build_family(p).expect("family point")).expect("family analysis")
    });
    let mut extra: Vec<(String, WManifold)> = vec![("abelian(4)".to_string(), abelian(4))];
    extra.extend(direct_sums());
    let extra_analyses: Vec<Analysis> =
        map_items(&extra, Execution::Parallel, |(_, m)| analyze(m).expect("corpus analysis"));

    let mut names: Vec<String> = grid.iter().map(|p| format!("family{p}")).collect();
    names.extend(extra.iter().map(|(n, _)| n.clone()));
    let corpus: Vec<&Analysis> = grid_analyses.iter().chain(&extra_analyses).collect();

    let criteria = [
        criterion_tables(&grid, &grid_analyses),
        criterion_spot_scalars(&grid, &grid_analyses),
        criterion_claims(&grid, &grid_analyses),
        criterion_invariance(&names, &corpus),
        criterion_structural(&names, &corpus),
        criterion_family_identities(&grid, &grid_analyses),
        criterion_negative_controls(&grid, &grid_analyses),
    ];
    let elapsed = start.elapsed();

    for (k, c) in criteria.iter().enumerate() {
        println!("[{}] criterion {}: {}", if c.passed { "PASS" } else { "FAIL" }, k + 1, c.summary);
    }
    for (k, c) in criteria.iter().enumerate() {
        for d in &c.details {
            println!("  criterion {}: {d}", k + 1);
        }
    }
    let in_budget = elapsed <= BUDGET;
    println!(
        "[{}] runtime: {:.2} s (budget {} s)",
        if in_budget { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        BUDGET.as_secs()
    );
    let passed = criteria.iter().filter(|c| c.passed).count();
    println!("{passed} of {} criteria pass", criteria.len());
    if passed == criteria.len() && in_budget {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

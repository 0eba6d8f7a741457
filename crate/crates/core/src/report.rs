//! Summary of one manifold: classification, scalar invariants and the
//! verification suite, rendered as text or JSON from the same data.

use std::fmt::Write as _;

use serde::Serialize;

use crate::classification::{is_isotropic_w0, lee_forms_closed, ClassificationResult};
use crate::curvature::is_scalar_flat;
use crate::error::Result;
use crate::linalg::signature;
use crate::manifold::WManifold;
use crate::scalar::Scalar;
use crate::twin::{analyze, invariance_checks, structural_checks, w1_checks, Check, VerificationReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ManifoldSummary {
    pub dim: usize,
    pub basis: Vec<String>,
    pub abelian: bool,
    /// `(positive, negative)` eigenvalue counts of `g` and `g̃`.
    pub signature: (usize, usize),
    pub signature_twin: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub source: String,
    pub manifold: ManifoldSummary,
    pub classification: ClassificationResult,
    pub tau: Scalar,
    pub tau_twin: Scalar,
    pub snorm: Scalar,
    pub snorm_twin: Scalar,
    pub isotropic_w0: bool,
    pub scalar_flat: bool,
    pub lee_forms_closed: bool,
    pub all_passed: bool,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn build(source: impl Into<String>, m: &WManifold) -> Result<Report> {
        let a = analyze(m)?;
        let mut suite: VerificationReport = invariance_checks(&a);
        suite.extend(structural_checks(&a));
        suite.extend(w1_checks(&a));
        let sig = |t: &crate::tensor::Tensor| {
            let (pos, neg, _) = signature(&t.to_matrix());
            (pos, neg)
        };
        let (s, t) = (&a.side, &a.twin);
        Ok(Report {
            source: source.into(),
            manifold: ManifoldSummary {
                dim: m.dim(),
                basis: m.algebra().labels().to_vec(),
                abelian: m.algebra().is_abelian(),
                signature: sig(m.g()),
                signature_twin: sig(m.g_twin()),
            },
            classification: s.classes.clone(),
            tau: s.curvature.tau.clone(),
            tau_twin: t.curvature.tau.clone(),
            snorm: s.structure.snorm.clone(),
            snorm_twin: t.structure.snorm.clone(),
            isotropic_w0: is_isotropic_w0(&s.structure.snorm),
            scalar_flat: is_scalar_flat(&s.curvature.tau),
            lee_forms_closed: lee_forms_closed(m.algebra(), &s.structure.theta, &s.structure.theta_star),
            all_passed: suite.all_passed(),
            checks: suite.checks,
            notes: suite.notes,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let m = &self.manifold;
        let c = &self.classification;
        let labels: Vec<&str> = c.satisfied.iter().map(|l| l.name()).collect();
        let _ = writeln!(out, "source: {}", self.source);
        let _ = writeln!(out, "dim: {}", m.dim);
        let _ = writeln!(out, "basis: {}", m.basis.join(" "));
        let _ = writeln!(out, "abelian: {}", m.abelian);
        let _ = writeln!(out, "signature: ({}, {})", m.signature.0, m.signature.1);
        let _ = writeln!(out, "signature_twin: ({}, {})", m.signature_twin.0, m.signature_twin.1);
        let _ = writeln!(out, "class: {}", c.minimal);
        let _ = writeln!(out, "classes: {}", labels.join(", "));
        let _ = writeln!(out, "classification_agreement: {}", c.agreement);
        let _ = writeln!(out, "tau: {}", self.tau);
        let _ = writeln!(out, "tau_twin: {}", self.tau_twin);
        let _ = writeln!(out, "snorm: {}", self.snorm);
        let _ = writeln!(out, "snorm_twin: {}", self.snorm_twin);
        let _ = writeln!(out, "isotropic_w0: {}", self.isotropic_w0);
        let _ = writeln!(out, "scalar_flat: {}", self.scalar_flat);
        let _ = writeln!(out, "lee_forms_closed: {}", self.lee_forms_closed);
        let _ = writeln!(out, "all_passed: {}", self.all_passed);
        for check in &self.checks {
            let _ = writeln!(out, "{}", check_line(check));
        }
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        out
    }
}

/// `check: PASS name` or `check: FAIL name at [i, j, k] (detail) {items}`.
pub fn check_line(c: &Check) -> String {
    let mut line = format!("check: {} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
    if let Some(at) = &c.counterexample {
        let _ = write!(line, " at {at:?}");
    }
    if let Some(d) = &c.detail {
        let _ = write!(line, " ({d})");
    }
    if !c.items.is_empty() {
        let _ = write!(line, " {{{}}}", c.items.join(", "));
    }
    line
}

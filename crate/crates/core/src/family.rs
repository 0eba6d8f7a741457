//! The two-parameter family of 4-dimensional Lie algebras carrying a `W1`
//! structure, its component tables, and the five claims about it as
//! executable checks over a parameter grid.

pub mod tables;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{default_labels, LieAlgebraModel};
use crate::classification::{lee_forms_closed, ClassLabel};
use crate::error::{Error, Result};
use crate::manifold::{build_manifold, diagonal_metric, pair_swap, WManifold};
use crate::parallel::{map_items, Execution};
use crate::scalar::Scalar;
use crate::tensor::{index_tuples, Tensor};
use crate::twin::{analyze, invariance_checks, structural_checks, w1_checks, Analysis, Check, VerificationReport};

use tables::{paper_tables, Entry, Table, Vals};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FamilyParams {
    pub lambda1: Scalar,
    pub lambda2: Scalar,
    pub epsilon: Scalar,
}

impl FamilyParams {
    pub fn new(lambda1: Scalar, lambda2: Scalar, epsilon: Scalar) -> Result<Self> {
        if !epsilon.is_unit_sign() {
            return Err(Error::Epsilon(epsilon.to_string()));
        }
        Ok(FamilyParams {
            lambda1,
            lambda2,
            epsilon,
        })
    }

    pub fn from_ints(lambda1: i64, lambda2: i64, epsilon: i64) -> Result<Self> {
        FamilyParams::new(lambda1.into(), lambda2.into(), epsilon.into())
    }

    pub fn is_origin(&self) -> bool {
        self.lambda1.is_zero() && self.lambda2.is_zero()
    }

    /// `λ1 = ±λ2`.
    pub fn on_null_locus(&self) -> bool {
        self.lambda1 == self.lambda2 || self.lambda1 == -&self.lambda2
    }

    fn vals(&self) -> Vals {
        Vals {
            l1: self.lambda1.clone(),
            l2: self.lambda2.clone(),
            e: self.epsilon.clone(),
        }
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.lambda1, self.lambda2, self.epsilon)
    }
}

pub fn family_algebra(p: &FamilyParams) -> Result<LieAlgebraModel> {
    let (l1, l2, e) = (&p.lambda1, &p.lambda2, &p.epsilon);
    let z = Scalar::zero;
    let two = Scalar::from_int(2);
    let a = vec![l1.clone(), e * l1, l2.clone(), e * l2];
    let b = vec![-(e * l1), -l1, e * l2, l2.clone()];
    let c12 = vec![&two * l2, &two * e * l2, z(), z()];
    let c34 = vec![z(), z(), &two * l1, &two * e * l1];
    LieAlgebraModel::from_brackets(
        default_labels(4),
        &[
            (0, 3, a.clone()),
            (2, 1, a),
            (0, 2, b.clone()),
            (3, 1, b),
            (0, 1, c12),
            (2, 3, c34),
        ],
    )
}

/// `P` the pair swap, `g = diag(1, 1, -1, -1)`.
pub fn build_family(p: &FamilyParams) -> Result<WManifold> {
    let g = diagonal_metric(&[1, 1, -1, -1].map(Scalar::from_int));
    build_manifold(family_algebra(p)?, pair_swap(4), g)
}

pub fn grid_values() -> Vec<Scalar> {
    [(-3, 1), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (2, 1)]
        .iter()
        .map(|&(n, d)| Scalar::ratio(n, d))
        .collect()
}

/// All `λ1, λ2` grid values crossed with `ε = ±1`.
pub fn default_grid() -> Vec<FamilyParams> {
    product(&grid_values(), &grid_values(), &[Scalar::one(), -Scalar::one()])
}

fn product(l1s: &[Scalar], l2s: &[Scalar], eps: &[Scalar]) -> Vec<FamilyParams> {
    let mut out = Vec::new();
    for l1 in l1s {
        for l2 in l2s {
            for e in eps {
                out.push(FamilyParams {
                    lambda1: l1.clone(),
                    lambda2: l2.clone(),
                    epsilon: e.clone(),
                });
            }
        }
    }
    out
}

/// Parses a grid description: `default`, `diagonal` (`λ1 = λ2`),
/// `anti-diagonal` (`λ1 = -λ2`), or `L1:L2:E` where each part is a
/// comma-separated list of rationals.
pub fn parse_grid(spec: &str) -> Result<Vec<FamilyParams>> {
    let eps = [Scalar::one(), -Scalar::one()];
    match spec {
        "default" => Ok(default_grid()),
        "diagonal" | "anti-diagonal" => {
            let sign = if spec == "diagonal" { Scalar::one() } else { -Scalar::one() };
            let mut out = Vec::new();
            for l in grid_values() {
                for e in &eps {
                    out.push(FamilyParams::new(l.clone(), &sign * &l, e.clone())?);
                }
            }
            Ok(out)
        }
        _ => {
            let parts: Vec<&str> = spec.split(':').collect();
            if parts.len() != 3 {
                return Err(Error::Document(format!(
                    "grid `{spec}`: expected default, diagonal, anti-diagonal or L1:L2:E"
                )));
            }
            let lists = parts
                .iter()
                .map(|part| {
                    part.split(',')
                        .map(|s| s.trim().parse::<Scalar>())
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            if let Some(e) = lists[2].iter().find(|e| !e.is_unit_sign()) {
                return Err(Error::Epsilon(e.to_string()));
            }
            Ok(product(&lists[0], &lists[1], &lists[2]))
        }
    }
}

/// Number of indices an entry name takes.
fn arity(name: &str) -> usize {
    match name {
        "fsharp" | "snorm" | "tsnorm" | "tau" | "ttau" => 0,
        "f" | "fstar" | "theta" | "thetastar" | "ttheta" | "tthetastar" => 1,
        "nabla" | "tnabla" | "Phi" | "D" | "rho" | "trho" => 2,
        "F" | "tF" | "Q" => 3,
        "R" | "tR" | "A" => 4,
        _ => panic!("unknown table quantity {name}"),
    }
}

/// `Γ^k_ij` with the upper index last, as the vector `∇_{X_i}X_j`.
fn column(t: &Tensor, rest: &[usize]) -> Vec<Scalar> {
    (0..t.dim())
        .map(|k| {
            let mut ix = vec![k];
            ix.extend_from_slice(rest);
            t.at(&ix).clone()
        })
        .collect()
}

/// Values of the quantities named in the tables, on one analysed point.
struct Lookup<'a> {
    a: &'a Analysis,
    a_lowered: Tensor,
}

impl<'a> Lookup<'a> {
    fn new(a: &'a Analysis) -> Self {
        let g = a.side.manifold.g();
        let a_lowered = a.pack.a_vec.lower_index(0, g, 3).expect("(1,3) tensor");
        Lookup { a, a_lowered }
    }

    fn get(&self, name: &str, ix: &[usize]) -> Vec<Scalar> {
        let (s, t, pack) = (&self.a.side, &self.a.twin, &self.a.pack);
        let one = |x: &Scalar| vec![x.clone()];
        match name {
            "nabla" => column(s.conn.gamma(), ix),
            "tnabla" => column(t.conn.gamma(), ix),
            "Phi" => column(&s.structure.phi_vec, ix),
            "D" => column(pack.d.gamma(), ix),
            "Q" => column(&pack.q_vec, ix),
            "fsharp" => s.structure.f_sharp.components().to_vec(),
            "snorm" => one(&s.structure.snorm),
            "tsnorm" => one(&t.structure.snorm),
            "tau" => one(&s.curvature.tau),
            "ttau" => one(&t.curvature.tau),
            "f" => one(s.structure.f.at(ix)),
            "fstar" => one(s.structure.f_star.at(ix)),
            "theta" => one(s.structure.theta.at(ix)),
            "thetastar" => one(s.structure.theta_star.at(ix)),
            "ttheta" => one(t.structure.theta.at(ix)),
            "tthetastar" => one(t.structure.theta_star.at(ix)),
            "rho" => one(s.curvature.ricci.at(ix)),
            "trho" => one(t.curvature.ricci.at(ix)),
            "F" => one(s.structure.f_tensor.at(ix)),
            "tF" => one(t.structure.f_tensor.at(ix)),
            "R" => one(s.curvature.r.at(ix)),
            "tR" => one(t.curvature.r.at(ix)),
            "A" => one(self.a_lowered.at(ix)),
            _ => panic!("unknown table quantity {name}"),
        }
    }

    fn entry(&self, e: &Entry, eps: &Scalar) -> Vec<Scalar> {
        let mut factor = e.coef.clone();
        if e.eps {
            factor *= eps;
        }
        self.get(&e.name, &e.idx).iter().map(|x| &factor * x).collect()
    }
}

fn label(name: &str, ix: &[usize]) -> String {
    let digits: String = ix.iter().map(|i| (i + 1).to_string()).collect();
    format!("{name}{digits}")
}

/// Every chain, the vanishing of the unlisted components and the
/// `ε`-relations of one table, as one check whose `items` name the failing
/// entries.
pub fn table_check(table: &Table, a: &Analysis, p: &FamilyParams) -> Check {
    let look = Lookup::new(a);
    let vals = p.vals();
    let mut items = Vec::new();
    for chain in &table.chains {
        let expected = chain.value.eval(&vals);
        for e in &chain.entries {
            if look.entry(e, &p.epsilon) != expected {
                items.push(e.label.clone());
            }
        }
    }
    for (name, symmetries) in &table.rest_zero {
        let covered = table.covered(name, symmetries);
        for ix in index_tuples(4, arity(name)) {
            if !covered.contains(&ix) && look.get(name, &ix).iter().any(|x| !x.is_zero()) {
                items.push(format!("{} = 0", label(name, &ix)));
            }
        }
    }
    for (lhs, rhs) in &table.relations {
        for ix in index_tuples(4, arity(rhs)) {
            let scaled: Vec<Scalar> = look.get(rhs, &ix).iter().map(|x| x * &p.epsilon).collect();
            if look.get(lhs, &ix) != scaled {
                items.push(format!("{} = e{}", label(lhs, &ix), label(rhs, &ix)));
            }
        }
    }
    let name = format!("table:{}", table.name);
    if items.is_empty() {
        Check::pass(name)
    } else {
        let mut c = Check::fail(name, format!("{} entries differ", items.len()));
        c.items = items;
        c
    }
}

/// The five claims, on both sides of the interchange.
pub fn claim_checks(a: &Analysis, p: &FamilyParams) -> Vec<Check> {
    let sides = [&a.side, &a.twin];
    let expected_min = if p.is_origin() { ClassLabel::W0 } else { ClassLabel::W1 };
    let alg = a.side.manifold.algebra();
    let null = p.on_null_locus();
    vec![
        Check::flag(
            "claim (i): minimal class W1 (W0 at the origin)",
            sides.iter().all(|s| s.classes.minimal == expected_min),
        ),
        Check::flag(
            "claim (ii): dθ = dθ* = 0",
            sides
                .iter()
                .all(|s| lee_forms_closed(alg, &s.structure.theta, &s.structure.theta_star)),
        ),
        Check::flag(
            "claim (iii): ‖∇P‖ = 0 iff λ1 = ±λ2",
            sides.iter().all(|s| s.structure.snorm.is_zero() == null),
        ),
        Check::flag(
            "claim (iv): τ = τ̃ = 0 iff λ1 = ±λ2",
            sides.iter().all(|s| s.curvature.tau.is_zero() == null),
        ),
        Check::flag(
            "claim (v): W0 iff λ1 = λ2 = 0",
            sides
                .iter()
                .all(|s| (s.classes.minimal == ClassLabel::W0) == p.is_origin()),
        ),
    ]
}

/// Identities that hold on this family but not in general.
pub fn family_identity_checks(a: &Analysis, p: &FamilyParams) -> Vec<Check> {
    let (s, t, pack) = (&a.side, &a.twin, &a.pack);
    let m = &s.manifold;
    let eps = &p.epsilon;
    let mut checks = vec![
        Check::zero("family: B = 0", &pack.b_vec),
        Check::equal("family: K = A", &pack.k_vec, &pack.a_vec),
        Check::zero("family: N = 0", &s.structure.n_vec),
        Check::equal(
            "family: N̂ = -4Φ",
            &s.structure.nhat_vec,
            &s.structure.phi_vec.scale(&Scalar::from_int(-4)),
        ),
        Check::equal("family: F̃ = εF", &t.structure.f_tensor, &s.structure.f_tensor.scale(eps)),
        Check::equal("family: R̃ = εR", &t.curvature.r, &s.curvature.r.scale(eps)),
        Check::equal(
            "family: F̃(x,y,z) = F(Px,y,z)",
            &t.structure.f_tensor,
            &s.structure.f_tensor.compose(0, m.p()).expect("(0,3) tensor"),
        ),
    ];
    match &pack.w1 {
        Some(w1) => {
            checks.push(Check::zero("family: H = 0", &w1.h));
            checks.push(Check::equal("family: Q from S, S*", &w1.q_rebuilt, &pack.q_vec));
        }
        None => checks.push(Check::fail("family: H = 0", "not in the class W1")),
    }
    let alg = m.algebra();
    let abelian_structure = (0..4).all(|i| {
        (0..4).all(|j| {
            let lhs = alg.bracket(&m.p_column(i), &m.p_column(j));
            let rhs: Vec<Scalar> = alg
                .bracket(&crate::tensor::basis_vector(4, i), &crate::tensor::basis_vector(4, j))
                .into_iter()
                .map(|x| -x)
                .collect();
            lhs == rhs
        })
    });
    checks.push(Check::flag("family: [PX_i, PX_j] = -[X_i, X_j]", abelian_structure));
    checks
}

/// Claims, tables and family identities at one point, followed by the
/// general suite. `tables` is normally [`tables::paper_tables`].
pub fn theorem_checks_with(p: &FamilyParams, tables: &[Table]) -> VerificationReport {
    let a = match build_family(p).and_then(|m| analyze(&m)) {
        Ok(a) => a,
        Err(e) => {
            return VerificationReport {
                checks: vec![Check::fail("analysis", e.to_string())],
                notes: Vec::new(),
            }
        }
    };
    theorem_checks_on(&a, p, tables)
}

/// As [`theorem_checks_with`], on an existing analysis of `build_family(p)`.
pub fn theorem_checks_on(a: &Analysis, p: &FamilyParams, tables: &[Table]) -> VerificationReport {
    let mut checks = claim_checks(a, p);
    checks.extend(tables.iter().map(|t| table_check(t, a, p)));
    checks.extend(family_identity_checks(a, p));
    let mut report = VerificationReport {
        checks,
        notes: Vec::new(),
    };
    if !a.side.structure.nhat_vec.is_zero() {
        report.notes.push(
            "N̂ = -4Φ is nonzero here, although an Abelian structure is sometimes said to give N̂ = 0"
                .to_string(),
        );
    }
    report.extend(invariance_checks(a));
    report.extend(structural_checks(a));
    report.extend(w1_checks(a));
    report
}

pub fn theorem_checks(p: &FamilyParams) -> VerificationReport {
    theorem_checks_with(p, &paper_tables())
}

/// How one check behaved across a grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridFailure {
    pub name: String,
    pub failed_points: usize,
    pub total_points: usize,
    /// First failing point.
    pub example: String,
    /// Failing entries with the number of points at which each fails.
    pub items: Vec<(String, usize)>,
}

impl GridFailure {
    pub fn at_all_points(&self) -> bool {
        self.failed_points == self.total_points
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GridReport {
    pub points: Vec<FamilyParams>,
    pub reports: Vec<VerificationReport>,
}

impl GridReport {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(VerificationReport::all_passed)
    }

    pub fn check_count(&self) -> usize {
        self.reports.iter().map(|r| r.checks.len()).sum()
    }

    /// Failing checks in first-seen order.
    pub fn failures(&self) -> Vec<GridFailure> {
        let mut order: Vec<String> = Vec::new();
        let mut by_name: BTreeMap<String, GridFailure> = BTreeMap::new();
        let mut item_counts: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
        for (p, report) in self.points.iter().zip(&self.reports) {
            for c in report.failures() {
                let entry = by_name.entry(c.name.clone()).or_insert_with(|| {
                    order.push(c.name.clone());
                    GridFailure {
                        name: c.name.clone(),
                        failed_points: 0,
                        total_points: self.points.len(),
                        example: p.to_string(),
                        items: Vec::new(),
                    }
                });
                entry.failed_points += 1;
                let counts = item_counts.entry(c.name.clone()).or_default();
                for item in &c.items {
                    *counts.entry(item.clone()).or_default() += 1;
                }
            }
        }
        order
            .into_iter()
            .map(|name| {
                let mut f = by_name.remove(&name).expect("recorded");
                f.items = item_counts.remove(&name).unwrap_or_default().into_iter().collect();
                f
            })
            .collect()
    }

    /// Distinct notes across the grid.
    pub fn notes(&self) -> Vec<String> {
        let mut notes: Vec<String> = Vec::new();
        for n in self.reports.iter().flat_map(|r| &r.notes) {
            if !notes.contains(n) {
                notes.push(n.clone());
            }
        }
        notes
    }
}

pub fn sweep_with(points: &[FamilyParams], tables: &[Table], exec: Execution) -> GridReport {
    GridReport {
        points: points.to_vec(),
        reports: map_items(points, exec, |p| theorem_checks_with(p, tables)),
    }
}

pub fn sweep(points: &[FamilyParams], exec: Execution) -> GridReport {
    sweep_with(points, &paper_tables(), exec)
}

/// The entry whose sign the self-test flips.
pub const SELF_TEST_ENTRY: &str = "R1221";

/// Tables with the sign of [`SELF_TEST_ENTRY`] flipped.
pub fn perturbed_tables() -> Vec<Table> {
    let mut tables = paper_tables();
    let flipped = tables.iter_mut().any(|t| t.perturb(SELF_TEST_ENTRY));
    debug_assert!(flipped);
    tables
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn rejects_bad_epsilon() {
        assert!(matches!(FamilyParams::from_ints(1, 1, 2), Err(Error::Epsilon(_))));
        assert!(FamilyParams::new(s(1), s(1), Scalar::ratio(1, 2)).is_err());
    }

    #[test]
    fn brackets_at_sample_points() {
        let alg = family_algebra(&FamilyParams::from_ints(1, 2, 1).unwrap()).unwrap();
        let x = |i| crate::tensor::basis_vector(4, i);
        assert_eq!(alg.bracket(&x(0), &x(3)), vec![s(1), s(1), s(2), s(2)]);
        let alg = family_algebra(&FamilyParams::from_ints(1, 2, -1).unwrap()).unwrap();
        assert_eq!(alg.bracket(&x(0), &x(2)), vec![s(1), s(-1), s(-2), s(2)]);
    }

    #[test]
    fn origin_is_abelian() {
        let m = build_family(&FamilyParams::from_ints(0, 0, 1).unwrap()).unwrap();
        assert!(m.algebra().is_abelian());
        let a = analyze(&m).unwrap();
        assert!(a.pack.d.gamma().is_zero());
        assert_eq!(a.side.classes.minimal, ClassLabel::W0);
    }

    #[test]
    fn every_grid_point_builds() {
        let grid = default_grid();
        assert_eq!(grid.len(), 98);
        for p in &grid {
            build_family(p).unwrap();
        }
    }

    #[test]
    fn grid_specs() {
        assert_eq!(parse_grid("default").unwrap().len(), 98);
        let diag = parse_grid("diagonal").unwrap();
        assert_eq!(diag.len(), 14);
        assert!(diag.iter().all(FamilyParams::on_null_locus));
        assert!(parse_grid("anti-diagonal")
            .unwrap()
            .iter()
            .all(|p| p.lambda1 == -&p.lambda2));
        let custom = parse_grid("1,1/2:2:1,-1").unwrap();
        assert_eq!(custom.len(), 4);
        assert_eq!(custom[2].lambda1, Scalar::ratio(1, 2));
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("1:2:3").is_err());
        assert!(parse_grid("0.5:2:1").is_err());
    }

    #[test]
    fn claims_hold_at_sample_points() {
        for (l1, l2, e) in [(1, 2, 1), (1, 1, 1), (3, -3, -1), (0, 0, -1), (-1, 2, -1)] {
            let p = FamilyParams::from_ints(l1, l2, e).unwrap();
            let a = analyze(&build_family(&p).unwrap()).unwrap();
            for c in claim_checks(&a, &p) {
                assert!(c.passed, "{} at {p}", c.name);
            }
        }
    }

    #[test]
    fn isotropic_branch_is_still_w1() {
        let p = FamilyParams::from_ints(1, 1, 1).unwrap();
        let a = analyze(&build_family(&p).unwrap()).unwrap();
        assert!(a.side.structure.snorm.is_zero());
        assert!(a.side.curvature.tau.is_zero());
        assert_eq!(a.side.classes.minimal, ClassLabel::W1);
    }

    #[test]
    fn correct_tables_pass() {
        let p = FamilyParams::from_ints(1, 2, 1).unwrap();
        let a = analyze(&build_family(&p).unwrap()).unwrap();
        for t in paper_tables() {
            if ["nabla", "Phi", "F", "norm", "theta", "D"].contains(&t.name) {
                let c = table_check(&t, &a, &p);
                assert!(c.passed, "{}: {:?}", c.name, c.items);
            }
        }
    }

    #[test]
    fn perturbation_is_detected() {
        let p = FamilyParams::from_ints(1, 2, 1).unwrap();
        let a = analyze(&build_family(&p).unwrap()).unwrap();
        let tables = perturbed_tables();
        let r = tables.iter().find(|t| t.name == "R").unwrap();
        let c = table_check(r, &a, &p);
        assert!(!c.passed);
        assert!(c.items.contains(&SELF_TEST_ENTRY.to_string()));
    }

    #[test]
    fn sweep_strategies_agree() {
        let points = parse_grid("1,2:-1,1/2:1,-1").unwrap();
        let seq = sweep(&points, Execution::Sequential);
        let par = sweep(&points, Execution::Parallel);
        assert_eq!(seq.reports, par.reports);
    }
}

//! The twin interchange `g <-> g̃`: tilde-side objects, the average
//! connection `D`, the tensors `Q, B, A, K`, the closed forms available in
//! the class `W1`, and the verification suite.

use serde::Serialize;

use crate::classification::{classify, ClassLabel, ClassificationResult};
use crate::connection::{covariant_derivative, koszul, Connection};
use crate::curvature::{curvature_operator, riemann, CurvaturePack};
use crate::error::{Error, Result};
use crate::manifold::WManifold;
use crate::scalar::Scalar;
use crate::structure::{fundamental_f, StructurePack};
use crate::tensor::{apply, first_difference, first_nonzero, Tensor};

/// One metric's worth of derived objects: its Levi-Civita connection,
/// structure tensors, curvature and classification.
#[derive(Clone, Debug)]
pub struct Side {
    pub manifold: WManifold,
    pub conn: Connection,
    pub structure: StructurePack,
    pub curvature: CurvaturePack,
    pub classes: ClassificationResult,
}

impl Side {
    pub fn compute(m: &WManifold) -> Result<Side> {
        let conn = koszul(m.algebra(), m.g(), m.g_inv())?;
        let structure = StructurePack::compute(m, &conn)?;
        let curvature = riemann(&conn, m.algebra(), m.g())?;
        let classes = classify(m, &structure)?;
        Ok(Side {
            manifold: m.clone(),
            conn,
            structure,
            curvature,
            classes,
        })
    }

    /// `Q` of this side, from its own connection and potential.
    pub fn q_vec(&self) -> Tensor {
        tensor_q(&self.conn, &self.structure.phi_vec)
    }
}

/// `S`, `S*`, `H` and the tensors rebuilt from them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct W1Forms {
    pub s: Tensor,
    pub s_star: Tensor,
    pub h: Tensor,
    /// `(1/2n){g(y,z)Sx - g(x,z)Sy - g̃(y,z)S*x + g̃(x,z)S*y}`.
    pub q_rebuilt: Tensor,
    /// The same expression with the signs of the `S*` terms reversed.
    pub q_rebuilt_alt_sign: Tensor,
    pub b_rebuilt: Tensor,
}

#[derive(Clone, Debug)]
pub struct TwinPack {
    pub conn_twin: Connection,
    pub f_twin: Tensor,
    pub phi_twin: Tensor,
    pub d: Connection,
    pub q_vec: Tensor,
    pub b_vec: Tensor,
    pub a_vec: Tensor,
    pub k_vec: Tensor,
    pub w1: Option<W1Forms>,
}

/// `∇̃ = ∇ + Φ`, compared against Koszul on `g̃`.
pub fn twin_connection(m: &WManifold, conn: &Connection, phi_vec: &Tensor) -> Result<Connection> {
    if let Some(at) = first_difference(phi_vec, &phi_vec.permute(&[0, 2, 1])?) {
        return Err(Error::consistency("Φ symmetric", at));
    }
    let shifted = conn.shifted(phi_vec)?;
    let direct = koszul(m.algebra(), m.g_twin(), m.g_twin_inv())?;
    if let Some(at) = first_difference(shifted.gamma(), direct.gamma()) {
        return Err(Error::consistency("∇ + Φ = Koszul(g̃)", at));
    }
    Ok(shifted)
}

/// `F̃(x,y,z) = ½{F(Py,z,x) - F(y,Pz,x) + F(Pz,y,x) - F(z,Py,x)}`,
/// compared against `g̃((∇̃_x P) y, z)`.
pub fn twin_f(m: &WManifold, f_tensor: &Tensor, conn_twin: &Connection) -> Result<Tensor> {
    let p = m.p();
    let yzx = f_tensor.permute(&[1, 2, 0])?;
    let zyx = f_tensor.permute(&[2, 1, 0])?;
    let f_twin = yzx
        .compose(1, p)?
        .sub(&yzx.compose(2, p)?)?
        .add(&zyx.compose(2, p)?)?
        .sub(&zyx.compose(1, p)?)?
        .scale(&Scalar::ratio(1, 2));
    let direct = fundamental_f(&m.twin()?, conn_twin)?;
    if let Some(at) = first_difference(&f_twin, &direct) {
        return Err(Error::consistency("F̃ from F = g̃((∇̃P)·,·)", at));
    }
    Ok(f_twin)
}

/// `Φ̃(x,y,z) = -Φ(x,y,Pz)`.
pub fn twin_phi(phi: &Tensor, p: &Tensor) -> Result<Tensor> {
    Ok(phi.compose(2, p)?.neg())
}

/// `D = ½(∇ + ∇̃)`.
pub fn average_connection(conn: &Connection, conn_twin: &Connection) -> Result<Connection> {
    Connection::new(
        conn.gamma()
            .add(conn_twin.gamma())?
            .scale(&Scalar::ratio(1, 2)),
    )
}

/// `B(x,y)z = Φ(x,Φ(y,z)) - Φ(y,Φ(x,z))` at `[l, x, y, z]`.
pub fn tensor_b(phi_vec: &Tensor) -> Tensor {
    let n = phi_vec.dim();
    Tensor::from_fn(n, 1, 3, |ix| {
        let (l, x, y, z) = (ix[0], ix[1], ix[2], ix[3]);
        (0..n)
            .map(|m| {
                phi_vec.at(&[l, x, m]) * phi_vec.at(&[m, y, z])
                    - phi_vec.at(&[l, y, m]) * phi_vec.at(&[m, x, z])
            })
            .sum()
    })
}

/// `(∇_x Φ)(y,z) - (∇_y Φ)(x,z)` at `[l, x, y, z]`.
fn derivative_part(conn: &Connection, phi_vec: &Tensor) -> Tensor {
    let dphi = covariant_derivative(conn, phi_vec).expect("(1,2) tensor");
    Tensor::from_fn(phi_vec.dim(), 1, 3, |ix| {
        let (l, x, y, z) = (ix[0], ix[1], ix[2], ix[3]);
        dphi.at(&[l, y, z, x]) - dphi.at(&[l, x, z, y])
    })
}

/// `Q(x,y)z = (∇_xΦ)(y,z) - (∇_yΦ)(x,z) + B(x,y)z`.
pub fn tensor_q(conn: &Connection, phi_vec: &Tensor) -> Tensor {
    derivative_part(conn, phi_vec)
        .add(&tensor_b(phi_vec))
        .expect("same shape")
}

/// `A = R + ½Q`.
pub fn tensor_a(r_vec: &Tensor, q_vec: &Tensor) -> Result<Tensor> {
    r_vec.add(&q_vec.scale(&Scalar::ratio(1, 2)))
}

/// Curvature of `D`, compared against `R + ½Q - ¼B`.
pub fn tensor_k(
    conn_d: &Connection,
    alg: &crate::algebra::LieAlgebraModel,
    r_vec: &Tensor,
    q_vec: &Tensor,
    b_vec: &Tensor,
) -> Result<Tensor> {
    let direct = curvature_operator(conn_d, alg);
    let formula = tensor_a(r_vec, q_vec)?.sub(&b_vec.scale(&Scalar::ratio(1, 4)))?;
    if let Some(at) = first_difference(&direct, &formula) {
        return Err(Error::consistency("curvature of D = R + ½Q - ¼B", at));
    }
    Ok(direct)
}

/// `Φ(x,y) = (1/2n){g(x,y)f♯ - g̃(x,y)Pf♯}` as a (1,2) tensor.
pub fn w1_potential(m: &WManifold, f_sharp: &Tensor) -> Tensor {
    let n = m.dim();
    let inv_2n = Scalar::ratio(1, 2 * m.n() as i64);
    let fs: Vec<Scalar> = f_sharp.components().to_vec();
    let pfs = apply(m.p(), &fs);
    Tensor::from_fn(n, 1, 2, |ix| {
        let (k, x, y) = (ix[0], ix[1], ix[2]);
        (m.g().at(&[x, y]) * &fs[k] - m.g_twin().at(&[x, y]) * &pfs[k]) * &inv_2n
    })
}

/// `(1/c){g(y,z)Ux - g(x,z)Uy + σ g̃(y,z)Vx - σ g̃(x,z)Vy}` at `[l, x, y, z]`
/// for endomorphisms `U`, `V` stored at `[l, x]`.
fn two_term(m: &WManifold, u: &Tensor, v: &Tensor, sigma: &Scalar, scale: &Scalar) -> Tensor {
    let (g, gt) = (m.g(), m.g_twin());
    Tensor::from_fn(m.dim(), 1, 3, |ix| {
        let (l, x, y, z) = (ix[0], ix[1], ix[2], ix[3]);
        let plain = g.at(&[y, z]) * u.at(&[l, x]) - g.at(&[x, z]) * u.at(&[l, y]);
        let twisted = gt.at(&[y, z]) * v.at(&[l, x]) - gt.at(&[x, z]) * v.at(&[l, y]);
        (plain + sigma * twisted) * scale
    })
}

/// `S`, `S*`, `H` and the rebuilt `Q`, `B` of a `W1` manifold:
/// `Sx = ∇_x f♯ + (1/2n)f(x)f♯`, `S*x = ∇_x Pf♯ + (1/2n)f(Px)f♯`,
/// `Hx = f(x)f♯ - f(Px)Pf♯`,
/// `B(x,y)z = (1/4n²){g(y,z)Hx - g(x,z)Hy - g̃(y,z)HPx + g̃(x,z)HPy}`.
pub fn w1_closed_forms(m: &WManifold, conn: &Connection, sp: &StructurePack) -> Result<W1Forms> {
    if w1_potential(m, &sp.f_sharp) != sp.phi_vec {
        return Err(Error::NotW1);
    }
    let n = m.dim();
    let p = m.p();
    let inv_2n = Scalar::ratio(1, 2 * m.n() as i64);
    let fs: Vec<Scalar> = sp.f_sharp.components().to_vec();
    let pfs_vec = Tensor::vector(apply(p, &fs));
    let f_p = sp.f.compose(0, p)?;
    let outer = |form: &Tensor, vector: &[Scalar]| {
        Tensor::from_fn(n, 1, 1, |ix| form.at(&[ix[1]]) * &vector[ix[0]])
    };
    let s = covariant_derivative(conn, &sp.f_sharp)?
        .add(&outer(&sp.f, &fs).scale(&inv_2n))?;
    let s_star = covariant_derivative(conn, &pfs_vec)?
        .add(&outer(&f_p, &fs).scale(&inv_2n))?;
    let h = outer(&sp.f, &fs).sub(&outer(&f_p, pfs_vec.components()))?;
    let hp = h.compose(1, p)?;
    let one = Scalar::one();
    let q_rebuilt = two_term(m, &s, &s_star, &-&one, &inv_2n);
    let q_rebuilt_alt_sign = two_term(m, &s, &s_star, &one, &inv_2n);
    let b_rebuilt = two_term(m, &h, &hp, &-&one, &(&inv_2n * &inv_2n));
    Ok(W1Forms {
        s,
        s_star,
        h,
        q_rebuilt,
        q_rebuilt_alt_sign,
        b_rebuilt,
    })
}

impl TwinPack {
    pub fn compute(m: &WManifold, side: &Side) -> Result<TwinPack> {
        let sp = &side.structure;
        let conn_twin = twin_connection(m, &side.conn, &sp.phi_vec)?;
        let f_twin = twin_f(m, &sp.f_tensor, &conn_twin)?;
        let phi_twin = twin_phi(&sp.phi, m.p())?;
        let d = average_connection(&side.conn, &conn_twin)?;
        let q_vec = tensor_q(&side.conn, &sp.phi_vec);
        let b_vec = tensor_b(&sp.phi_vec);
        let a_vec = tensor_a(&side.curvature.r_vec, &q_vec)?;
        let k_vec = tensor_k(&d, m.algebra(), &side.curvature.r_vec, &q_vec, &b_vec)?;
        let w1 = if side.classes.satisfied.contains(&ClassLabel::W1) {
            Some(w1_closed_forms(m, &side.conn, sp)?)
        } else {
            None
        };
        Ok(TwinPack {
            conn_twin,
            f_twin,
            phi_twin,
            d,
            q_vec,
            b_vec,
            a_vec,
            k_vec,
            w1,
        })
    }
}

/// Both sides of the interchange plus the combined tensors.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub side: Side,
    pub twin: Side,
    pub pack: TwinPack,
}

pub fn analyze(m: &WManifold) -> Result<Analysis> {
    let side = Side::compute(m)?;
    let twin = Side::compute(&m.twin()?)?;
    let pack = TwinPack::compute(m, &side)?;
    Ok(Analysis { side, twin, pack })
}

/// One named exact check; `counterexample` holds 1-based indices of the
/// first failing component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Labels of the individual entries that failed, for grouped checks.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub items: Vec<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed: true,
            counterexample: None,
            detail: None,
            items: Vec::new(),
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed: false,
            counterexample: None,
            detail: Some(detail.into()),
            items: Vec::new(),
        }
    }

    pub fn flag(name: impl Into<String>, ok: bool) -> Check {
        if ok {
            Check::pass(name)
        } else {
            Check::fail(name, "does not hold")
        }
    }

    /// Exact tensor equality; a failure records the first differing index.
    pub fn equal(name: impl Into<String>, a: &Tensor, b: &Tensor) -> Check {
        match first_difference(a, b) {
            None => Check::pass(name),
            Some(at) => Check {
                name: name.into(),
                passed: false,
                counterexample: Some(at.into_iter().map(|i| i + 1).collect()),
                detail: None,
                items: Vec::new(),
            },
        }
    }

    pub fn zero(name: impl Into<String>, t: &Tensor) -> Check {
        match first_nonzero(t) {
            None => Check::pass(name),
            Some(at) => Check {
                name: name.into(),
                passed: false,
                counterexample: Some(at.into_iter().map(|i| i + 1).collect()),
                detail: None,
                items: Vec::new(),
            },
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    /// Observations that are reported but not counted as failures.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }
}

/// The interchange identities: anti-invariance of `Φ`, `N̂`, `Q`; invariance
/// of `f`, `f*`, `θ`, `θ*`, the class set, `D`, `N`, `B`, `A`, `K` and of
/// linear combinations of `A` and `K`; plus the lowered Nijenhuis
/// relations and the derivative identity for `Φ̃`.
pub fn invariance_checks(a: &Analysis) -> VerificationReport {
    let (s, t, pack) = (&a.side, &a.twin, &a.pack);
    let m = &s.manifold;
    let p = m.p();
    let (ss, ts) = (&s.structure, &t.structure);
    let mut checks = vec![
        Check::equal("Φ̃ = -Φ", &ts.phi_vec, &ss.phi_vec.neg()),
        Check::equal("f̃ = f", &ts.f, &ss.f),
        Check::equal("f̃* = f*", &ts.f_star, &ss.f_star),
        Check::equal("θ̃ = θ", &ts.theta, &ss.theta),
        Check::equal("θ̃* = θ*", &ts.theta_star, &ss.theta_star),
        Check::flag("class set invariant", s.classes.satisfied == t.classes.satisfied),
    ];
    let d_twin = t
        .conn
        .shifted(&ts.phi_vec.scale(&Scalar::ratio(1, 2)))
        .expect("(1,2) tensor");
    checks.push(Check::equal("D̃ = D", d_twin.gamma(), pack.d.gamma()));
    checks.push(Check::equal("Ñ = N", &ts.n_vec, &ss.n_vec));
    checks.push(Check::equal("Ñ̂ = -N̂", &ts.nhat_vec, &ss.nhat_vec.neg()));
    checks.push(Check::equal(
        "Ñ(x,y,z) = N(x,y,Pz)",
        &ts.n,
        &ss.n.compose(2, p).unwrap(),
    ));
    checks.push(Check::equal(
        "Ñ̂(x,y,z) = -N̂(x,y,Pz)",
        &ts.nhat,
        &ss.nhat.compose(2, p).unwrap().neg(),
    ));
    checks.push(Check::equal(
        "Φ̃(x,y,z) = -Φ(x,y,Pz)",
        &ts.phi,
        &pack.phi_twin,
    ));
    checks.push(Check::equal("F̃ from F", &ts.f_tensor, &pack.f_twin));

    let q_twin = t.q_vec();
    checks.push(Check::equal("Q̃ = -Q", &q_twin, &pack.q_vec.neg()));
    let b_twin = tensor_b(&ts.phi_vec);
    checks.push(Check::equal("B̃ = B", &b_twin, &pack.b_vec));
    let a_twin = tensor_a(&t.curvature.r_vec, &q_twin).unwrap();
    checks.push(Check::equal("Ã = A", &a_twin, &pack.a_vec));
    let k_twin = a_twin
        .sub(&b_twin.scale(&Scalar::ratio(1, 4)))
        .unwrap();
    checks.push(Check::equal("K̃ = K", &k_twin, &pack.k_vec));
    let k_from_a = pack
        .a_vec
        .sub(&pack.b_vec.scale(&Scalar::ratio(1, 4)))
        .unwrap();
    checks.push(Check::equal("K = A - ¼B", &pack.k_vec, &k_from_a));
    for (alpha, beta) in [(Scalar::from_int(2), Scalar::from_int(-3)), (Scalar::ratio(1, 2), Scalar::ratio(5, 7))] {
        let combo = |a_: &Tensor, k_: &Tensor| a_.scale(&alpha).add(&k_.scale(&beta)).unwrap();
        checks.push(Check::equal(
            format!("{alpha}A + {beta}K invariant"),
            &combo(&a_twin, &k_twin),
            &combo(&pack.a_vec, &pack.k_vec),
        ));
    }
    let lhs = derivative_part(&t.conn, &ts.phi_vec);
    let rhs = derivative_part(&s.conn, &ss.phi_vec)
        .neg()
        .sub(&pack.b_vec.scale(&Scalar::from_int(2)))
        .unwrap();
    checks.push(Check::equal(
        "(∇̃_xΦ̃)(y,z) - (∇̃_yΦ̃)(x,z) = -(∇_xΦ)(y,z) + (∇_yΦ)(x,z) - 2B(x,y)z",
        &lhs,
        &rhs,
    ));
    VerificationReport {
        checks,
        notes: Vec::new(),
    }
}

/// Cross-checks between independent routes to the same object.
pub fn structural_checks(a: &Analysis) -> VerificationReport {
    let (s, t, pack) = (&a.side, &a.twin, &a.pack);
    let m = &s.manifold;
    let ss = &s.structure;
    let mut checks = vec![
        Check::equal("∇ + Φ = Koszul(g̃)", pack.conn_twin.gamma(), t.conn.gamma()),
        Check::equal(
            "Φ from F = ∇̃ - ∇",
            &ss.phi_vec,
            &t.conn.gamma().sub(s.conn.gamma()).unwrap(),
        ),
    ];
    let p = m.p();
    let rebuilt = ss
        .phi
        .compose(2, p)
        .unwrap()
        .add(&ss.phi.permute(&[0, 2, 1]).unwrap().compose(1, p).unwrap())
        .unwrap();
    checks.push(Check::equal("F = Φ(x,y,Pz) + Φ(x,z,Py)", &ss.f_tensor, &rebuilt));
    let k_formula = tensor_a(&s.curvature.r_vec, &pack.q_vec)
        .unwrap()
        .sub(&pack.b_vec.scale(&Scalar::ratio(1, 4)))
        .unwrap();
    checks.push(Check::equal(
        "K: curvature of D = R + ½Q - ¼B",
        &curvature_operator(&pack.d, m.algebra()),
        &k_formula,
    ));
    checks.push(Check::equal(
        "R̃ = R + Q",
        &t.curvature.r_vec,
        &s.curvature.r_vec.add(&pack.q_vec).unwrap(),
    ));
    checks.push(Check::equal(
        "A = ½(R + R̃)",
        &pack.a_vec,
        &s.curvature
            .r_vec
            .add(&t.curvature.r_vec)
            .unwrap()
            .scale(&Scalar::ratio(1, 2)),
    ));
    checks.push(Check::flag(
        "classification by F = classification by Φ",
        s.classes.agreement && t.classes.agreement,
    ));
    VerificationReport {
        checks,
        notes: Vec::new(),
    }
}

/// Identities specific to the class `W1`; empty when the manifold is not `W1`.
pub fn w1_checks(a: &Analysis) -> VerificationReport {
    let mut report = VerificationReport::default();
    let Some(w1) = &a.pack.w1 else {
        return report;
    };
    let m = &a.side.manifold;
    report.checks.push(Check::equal(
        "W1: F̃(x,y,z) = F(Px,y,z)",
        &a.twin.structure.f_tensor,
        &a.side.structure.f_tensor.compose(0, m.p()).unwrap(),
    ));
    report
        .checks
        .push(Check::equal("W1: Q from S, S*", &w1.q_rebuilt, &a.pack.q_vec));
    report
        .checks
        .push(Check::equal("W1: B from H", &w1.b_rebuilt, &a.pack.b_vec));
    if w1.q_rebuilt_alt_sign != a.pack.q_vec && w1.q_rebuilt != w1.q_rebuilt_alt_sign {
        report.notes.push(
            "Q rebuilt with +g̃(y,z)S*x - g̃(x,z)S*y does not match the direct Q; the opposite sign does"
                .to_string(),
        );
    }
    report
}

/// Runs the whole suite on `m`. Construction failures become failing checks.
pub fn invariance_suite(m: &WManifold) -> VerificationReport {
    match analyze(m) {
        Ok(a) => {
            let mut report = invariance_checks(&a);
            report.extend(structural_checks(&a));
            report.extend(w1_checks(&a));
            report
        }
        Err(e) => VerificationReport {
            checks: vec![Check::fail("analysis", e.to_string())],
            notes: Vec::new(),
        },
    }
}

//! `F`, the potential `Φ`, Lee forms, Nijenhuis tensors and `‖∇P‖`.

use crate::connection::{covariant_derivative, koszul, Connection};
use crate::error::{Error, Result};
use crate::manifold::WManifold;
use crate::scalar::Scalar;
use crate::tensor::{apply, apply2, basis_vector, first_difference, first_nonzero, Tensor};

/// Everything derived from `∇P` for one metric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructurePack {
    pub f_tensor: Tensor,
    pub phi_vec: Tensor,
    pub phi: Tensor,
    pub theta: Tensor,
    pub theta_star: Tensor,
    pub f: Tensor,
    pub f_star: Tensor,
    pub f_sharp: Tensor,
    pub n_vec: Tensor,
    pub nhat_vec: Tensor,
    pub n: Tensor,
    pub nhat: Tensor,
    pub snorm: Scalar,
}

/// Output of [`potential_phi`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiForms {
    pub phi: Tensor,
    pub phi_vec: Tensor,
    pub f: Tensor,
    pub f_star: Tensor,
    pub f_sharp: Tensor,
}

/// Output of [`nijenhuis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NijenhuisPack {
    pub n_vec: Tensor,
    pub nhat_vec: Tensor,
    pub n: Tensor,
    pub nhat: Tensor,
}

fn expect_equal(check: &str, a: &Tensor, b: &Tensor) -> Result<()> {
    match first_difference(a, b) {
        None => Ok(()),
        Some(at) => Err(Error::consistency(check, at)),
    }
}

fn expect_zero(check: &str, t: &Tensor) -> Result<()> {
    match first_nonzero(t) {
        None => Ok(()),
        Some(at) => Err(Error::consistency(check, at)),
    }
}

/// `g((∇_x P) y, z)` at `[x, y, z]`, with the identities
/// `F(x,y,z) = F(x,z,y) = -F(x,Py,Pz)` and `F(x,Py,z) = -F(x,y,Pz)` checked.
pub fn fundamental_f(m: &WManifold, conn: &Connection) -> Result<Tensor> {
    let n = m.dim();
    let dp = covariant_derivative(conn, m.p())?;
    let g = m.g();
    let f = Tensor::from_fn(n, 0, 3, |ix| {
        let (x, y, z) = (ix[0], ix[1], ix[2]);
        (0..n).map(|k| dp.at(&[k, y, x]) * g.at(&[k, z])).sum()
    });
    expect_equal("F(x,y,z) = F(x,z,y)", &f, &f.permute(&[0, 2, 1])?)?;
    let f_pp = f.compose(1, m.p())?.compose(2, m.p())?;
    expect_equal("F(x,y,z) = -F(x,Py,Pz)", &f, &f_pp.neg())?;
    expect_equal(
        "F(x,Py,z) = -F(x,y,Pz)",
        &f.compose(1, m.p())?,
        &f.compose(2, m.p())?.neg(),
    )?;
    Ok(f)
}

/// `Σ_ij g^ij t(e_i, e_j, z)` and `Σ_ij g^ij t(e_i, P e_j, z)` for a (0,3) tensor.
fn traces(m: &WManifold, t: &Tensor) -> (Tensor, Tensor) {
    let n = m.dim();
    let gi = m.g_inv();
    let tp = t.compose(1, m.p()).expect("(0,3) tensor");
    let trace = |u: &Tensor| {
        Tensor::covector(
            (0..n)
                .map(|z| {
                    let mut acc = Scalar::zero();
                    for i in 0..n {
                        for j in 0..n {
                            let w = gi.at(&[i, j]);
                            if !w.is_zero() {
                                acc += w * u.at(&[i, j, z]);
                            }
                        }
                    }
                    acc
                })
                .collect(),
        )
    };
    (trace(t), trace(&tp))
}

/// `-α ∘ P` for a 1-form `α`.
fn minus_compose_p(m: &WManifold, alpha: &Tensor) -> Tensor {
    alpha.compose(0, m.p()).expect("1-form").neg()
}

/// Lee forms `(θ, θ*)`; `θ* = -θ ∘ P` is checked.
pub fn lee_forms(m: &WManifold, f_tensor: &Tensor) -> Result<(Tensor, Tensor)> {
    if f_tensor.ranks() != (0, 3) || f_tensor.dim() != m.dim() {
        return Err(Error::Rank("F must be a (0,3) tensor on the manifold".into()));
    }
    let (theta, theta_star) = traces(m, f_tensor);
    expect_equal("θ* = -θ∘P", &theta_star, &minus_compose_p(m, &theta))?;
    Ok((theta, theta_star))
}

/// `Φ(x,y,z) = ½{F(x,y,Pz) + F(y,x,Pz) - F(Pz,x,y)}` and its traces.
///
/// Cross-checks: `F(x,y,z) = Φ(x,y,Pz) + Φ(x,z,Py)`, the four-term identity
/// `Φ(x,y,z) + Φ(x,z,y) + Φ(x,Py,Pz) + Φ(x,Pz,Py) = 0`, `f = -f*∘P`,
/// `f = -θ*`, `f* = -θ`, symmetry of `Φ`, and `Φ = ∇̃ - ∇` from two
/// independent Koszul computations.
pub fn potential_phi(m: &WManifold, f_tensor: &Tensor) -> Result<PhiForms> {
    let p = m.p();
    let half = Scalar::ratio(1, 2);
    let fz = f_tensor.compose(2, p)?;
    let phi = fz
        .add(&fz.permute(&[1, 0, 2])?)?
        .sub(&f_tensor.permute(&[2, 0, 1])?.compose(2, p)?)?
        .scale(&half);

    expect_equal("Φ(x,y,z) = Φ(y,x,z)", &phi, &phi.permute(&[1, 0, 2])?)?;
    let rebuilt = phi
        .compose(2, p)?
        .add(&phi.permute(&[0, 2, 1])?.compose(1, p)?)?;
    expect_equal("F(x,y,z) = Φ(x,y,Pz) + Φ(x,z,Py)", f_tensor, &rebuilt)?;
    let phi_pp = phi.compose(1, p)?.compose(2, p)?;
    let four = phi
        .add(&phi.permute(&[0, 2, 1])?)?
        .add(&phi_pp)?
        .add(&phi_pp.permute(&[0, 2, 1])?)?;
    expect_zero("Φ(x,y,z)+Φ(x,z,y)+Φ(x,Py,Pz)+Φ(x,Pz,Py) = 0", &four)?;

    let (f, f_star) = traces(m, &phi);
    expect_equal("f = -f*∘P", &f, &minus_compose_p(m, &f_star))?;
    let (theta, theta_star) = lee_forms(m, f_tensor)?;
    expect_equal("f = -θ*", &f, &theta_star.neg())?;
    expect_equal("f* = -θ", &f_star, &theta.neg())?;

    let phi_vec = phi.raise_index(2, m.g_inv())?;
    let conn = koszul(m.algebra(), m.g(), m.g_inv())?;
    let conn_twin = koszul(m.algebra(), m.g_twin(), m.g_twin_inv())?;
    expect_equal(
        "Φ = ∇̃ - ∇",
        &phi_vec,
        &conn_twin.gamma().sub(conn.gamma())?,
    )?;
    let f_sharp = f.raise_index(0, m.g_inv())?;
    Ok(PhiForms {
        phi,
        phi_vec,
        f,
        f_star,
        f_sharp,
    })
}

/// `N(x,y) = [Px,Py] + [x,y] - P[Px,y] - P[x,Py]` and its brace analogue
/// `N̂` with `{u,v} = ∇_u v + ∇_v u`, both lowered with `g`.
///
/// Cross-checks: `N(x,y,z) = 2Φ(z,x,y) + 2Φ(z,Px,Py)`,
/// `N̂(x,y,z) = -2Φ(x,y,z) - 2Φ(Px,Py,z)` and `N(x,y,z) = -N(x,Py,Pz)`.
pub fn nijenhuis(m: &WManifold, conn: &Connection, phi: &Tensor) -> Result<NijenhuisPack> {
    let n = m.dim();
    let alg = m.algebra();
    let p = m.p();
    let bracket = |u: &[Scalar], v: &[Scalar]| alg.bracket(u, v);
    let brace = |u: &[Scalar], v: &[Scalar]| {
        let a = apply2(conn.gamma(), u, v);
        let b = apply2(conn.gamma(), v, u);
        a.iter().zip(&b).map(|(x, y)| x + y).collect::<Vec<_>>()
    };
    let build = |op: &dyn Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>| {
        let mut t = Tensor::zeros(n, 1, 2);
        for i in 0..n {
            let (ei, pi) = (basis_vector(n, i), m.p_column(i));
            for j in 0..n {
                let (ej, pj) = (basis_vector(n, j), m.p_column(j));
                let a = op(&pi, &pj);
                let b = op(&ei, &ej);
                let c = apply(p, &op(&pi, &ej));
                let d = apply(p, &op(&ei, &pj));
                for k in 0..n {
                    t.set(&[k, i, j], &a[k] + &b[k] - &c[k] - &d[k]);
                }
            }
        }
        t
    };
    let n_vec = build(&bracket);
    let nhat_vec = build(&brace);
    let n_low = n_vec.lower_index(0, m.g(), 2)?;
    let nhat_low = nhat_vec.lower_index(0, m.g(), 2)?;

    let two = Scalar::from_int(2);
    let phi_z = phi.permute(&[2, 0, 1])?;
    let expected_n = phi_z
        .add(&phi_z.compose(0, p)?.compose(1, p)?)?
        .scale(&two);
    expect_equal("N(x,y,z) = 2Φ(z,x,y) + 2Φ(z,Px,Py)", &n_low, &expected_n)?;
    let expected_nhat = phi
        .add(&phi.compose(0, p)?.compose(1, p)?)?
        .scale(&two)
        .neg();
    expect_equal("N̂(x,y,z) = -2Φ(x,y,z) - 2Φ(Px,Py,z)", &nhat_low, &expected_nhat)?;
    expect_equal(
        "N(x,y,z) = -N(x,Py,Pz)",
        &n_low,
        &n_low.compose(1, p)?.compose(2, p)?.neg(),
    )?;
    Ok(NijenhuisPack {
        n_vec,
        nhat_vec,
        n: n_low,
        nhat: nhat_low,
    })
}

/// `‖∇P‖ = g^ij g^kl g^st F_iks F_jlt`.
pub fn square_norm(m: &WManifold, f_tensor: &Tensor) -> Scalar {
    let gi = m.g_inv();
    let raised = f_tensor
        .raise_index(0, gi)
        .and_then(|t| t.raise_index(1, gi))
        .and_then(|t| t.raise_index(2, gi))
        .expect("(0,3) tensor");
    f_tensor
        .components()
        .iter()
        .zip(raised.components())
        .map(|(a, b)| a * b)
        .sum()
}

impl StructurePack {
    /// Runs every structure computation for `m` with its Levi-Civita `conn`.
    pub fn compute(m: &WManifold, conn: &Connection) -> Result<StructurePack> {
        let f_tensor = fundamental_f(m, conn)?;
        let (theta, theta_star) = lee_forms(m, &f_tensor)?;
        let phi = potential_phi(m, &f_tensor)?;
        let nij = nijenhuis(m, conn, &phi.phi)?;
        let snorm = square_norm(m, &f_tensor);
        let low = phi.f_sharp.lower_index(0, m.g(), 0)?;
        expect_equal("f(z) = g(f♯, z)", &phi.f, &low)?;
        Ok(StructurePack {
            f_tensor,
            phi_vec: phi.phi_vec,
            phi: phi.phi,
            theta,
            theta_star,
            f: phi.f,
            f_star: phi.f_star,
            f_sharp: phi.f_sharp,
            n_vec: nij.n_vec,
            nhat_vec: nij.nhat_vec,
            n: nij.n,
            nhat: nij.nhat,
            snorm,
        })
    }
}

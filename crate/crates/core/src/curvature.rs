//! Curvature of constant-coefficient connections, Ricci and scalar curvature.

use crate::algebra::LieAlgebraModel;
use crate::connection::Connection;
use crate::error::{Error, Result};
use crate::manifold::WManifold;
use crate::scalar::Scalar;
use crate::tensor::{first_difference, first_nonzero, Tensor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvaturePack {
    /// `R(X_i, X_j) X_k = R^l_ijk X_l` at `[l, i, j, k]`.
    pub r_vec: Tensor,
    /// `R(x, y, z, w) = g(R(x, y) z, w)`.
    pub r: Tensor,
    /// `ρ(y, z) = g^ij R(e_i, y, z, e_j)`.
    pub ricci: Tensor,
    pub tau: Scalar,
}

/// `R(x,y)z = ∇_x∇_y z - ∇_y∇_x z - ∇_{[x,y]} z` for constant coefficients,
/// with no checks. Also used for connections that are not metric.
pub fn curvature_operator(conn: &Connection, alg: &LieAlgebraModel) -> Tensor {
    let n = alg.dim();
    Tensor::from_fn(n, 1, 3, |ix| {
        let (l, i, j, k) = (ix[0], ix[1], ix[2], ix[3]);
        (0..n)
            .map(|m| {
                conn.coeff(m, j, k) * conn.coeff(l, i, m) - conn.coeff(m, i, k) * conn.coeff(l, j, m)
                    - alg.c(m, i, j) * conn.coeff(l, m, k)
            })
            .sum()
    })
}

fn inverse_of(metric: &Tensor) -> Result<Tensor> {
    let inv = crate::linalg::inverse(&metric.to_matrix()).ok_or(Error::DegenerateMetric)?;
    Tensor::from_matrix(&inv, 2, 0)
}

/// Checks `R(x,y,z,w) = -R(y,x,z,w) = -R(x,y,w,z)` and the first Bianchi
/// identity; returns the name of the first failing property.
pub fn curvature_like(r: &Tensor) -> std::result::Result<(), (String, Vec<usize>)> {
    let fail = |name: &str, at: Vec<usize>| Err((name.to_string(), at));
    if let Some(at) = first_difference(r, &r.permute(&[1, 0, 2, 3]).unwrap().neg()) {
        return fail("R(x,y,z,w) = -R(y,x,z,w)", at);
    }
    if let Some(at) = first_difference(r, &r.permute(&[0, 1, 3, 2]).unwrap().neg()) {
        return fail("R(x,y,z,w) = -R(x,y,w,z)", at);
    }
    let bianchi = r
        .add(&r.permute(&[1, 2, 0, 3]).unwrap())
        .and_then(|t| t.add(&r.permute(&[2, 0, 1, 3]).unwrap()))
        .unwrap();
    if let Some(at) = first_nonzero(&bianchi) {
        return fail("R(x,y,z,w) + R(y,z,x,w) + R(z,x,y,w) = 0", at);
    }
    Ok(())
}

/// Curvature of `conn`, lowered and traced with `lowering_metric`.
pub fn riemann(
    conn: &Connection,
    alg: &LieAlgebraModel,
    lowering_metric: &Tensor,
) -> Result<CurvaturePack> {
    let n = alg.dim();
    let r_vec = curvature_operator(conn, alg);
    let r = r_vec.lower_index(0, lowering_metric, 3)?;
    curvature_like(&r).map_err(|(check, at)| Error::consistency(&check, at))?;
    let inv = inverse_of(lowering_metric)?;
    let ricci = Tensor::from_fn(n, 0, 2, |ix| {
        let (y, z) = (ix[0], ix[1]);
        let mut acc = Scalar::zero();
        for i in 0..n {
            for j in 0..n {
                let w = inv.at(&[i, j]);
                if !w.is_zero() {
                    acc += w * r.at(&[i, y, z, j]);
                }
            }
        }
        acc
    });
    let tau = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| inv.at(&[i, j]) * ricci.at(&[i, j]))
        .sum();
    Ok(CurvaturePack {
        r_vec,
        r,
        ricci,
        tau,
    })
}

/// Curvature of the Levi-Civita connection of `g̃`, lowered and traced with `g̃`.
pub fn riemann_twin(m: &WManifold, conn_twin: &Connection) -> Result<CurvaturePack> {
    riemann(conn_twin, m.algebra(), m.g_twin())
}

pub fn is_scalar_flat(tau: &Scalar) -> bool {
    tau.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::koszul;
    use crate::corpus;
    use crate::family::{build_family, FamilyParams};

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn abelian_is_flat() {
        let m = corpus::abelian(4);
        let conn = koszul(m.algebra(), m.g(), m.g_inv()).unwrap();
        let c = riemann(&conn, m.algebra(), m.g()).unwrap();
        assert!(c.r.is_zero());
        assert!(is_scalar_flat(&c.tau));
    }

    #[test]
    fn family_components() {
        let m = build_family(&FamilyParams::from_ints(1, 2, 1).unwrap()).unwrap();
        let conn = koszul(m.algebra(), m.g(), m.g_inv()).unwrap();
        let c = riemann(&conn, m.algebra(), m.g()).unwrap();
        assert_eq!(c.r.at(&[0, 1, 1, 0]), &s(-32));
        assert_eq!(c.r.at(&[2, 3, 3, 2]), &s(8));
        assert_eq!(c.ricci.at(&[0, 0]), &s(-56));
        assert_eq!(c.ricci.at(&[0, 2]), &s(-16));
        assert_eq!(c.tau, s(-144));
        let twin = koszul(m.algebra(), m.g_twin(), m.g_twin_inv()).unwrap();
        let ct = riemann_twin(&m, &twin).unwrap();
        assert_eq!(ct.tau, s(144));
        assert_eq!(ct.ricci.at(&[0, 0]), &s(-8));
    }

    #[test]
    fn scalar_flat_on_diagonal() {
        let m = build_family(&FamilyParams::from_ints(3, 3, 1).unwrap()).unwrap();
        let conn = koszul(m.algebra(), m.g(), m.g_inv()).unwrap();
        assert!(is_scalar_flat(&riemann(&conn, m.algebra(), m.g()).unwrap().tau));
    }

    #[test]
    fn curvature_like_detects_broken_symmetry() {
        let mut r = Tensor::zeros(4, 0, 4);
        r.set(&[0, 1, 0, 1], s(1));
        let (name, _) = curvature_like(&r).unwrap_err();
        assert!(name.contains("-R(y,x,z,w)"));
    }
}

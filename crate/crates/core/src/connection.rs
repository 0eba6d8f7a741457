//! Affine connections in an invariant frame and the Levi-Civita connection.

use crate::algebra::LieAlgebraModel;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tensor::{first_nonzero, Tensor};

/// Constant connection coefficients, `∇_{X_i} X_j = Γ^k_ij X_k` at `[k, i, j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    gamma: Tensor,
}

impl Connection {
    pub fn new(gamma: Tensor) -> Result<Self> {
        if gamma.ranks() != (1, 2) {
            return Err(Error::Rank(format!(
                "connection coefficients must be (1,2), got {:?}",
                gamma.ranks()
            )));
        }
        Ok(Connection { gamma })
    }

    pub fn zero(dim: usize) -> Self {
        Connection {
            gamma: Tensor::zeros(dim, 1, 2),
        }
    }

    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    pub fn gamma(&self) -> &Tensor {
        &self.gamma
    }

    /// `Γ^k_ij`.
    pub fn coeff(&self, k: usize, i: usize, j: usize) -> &Scalar {
        self.gamma.at(&[k, i, j])
    }

    /// Components of `∇_{X_i} X_j`.
    pub fn nabla(&self, i: usize, j: usize) -> Vec<Scalar> {
        (0..self.dim()).map(|k| self.coeff(k, i, j).clone()).collect()
    }

    /// `∇ + t` for a (1,2) difference tensor `t`.
    pub fn shifted(&self, t: &Tensor) -> Result<Connection> {
        Connection::new(self.gamma.add(t)?)
    }
}

/// `T^k_ij = Γ^k_ij - Γ^k_ji - c^k_ij`.
pub fn torsion(conn: &Connection, alg: &LieAlgebraModel) -> Result<Tensor> {
    if conn.dim() != alg.dim() {
        return Err(Error::Dimension {
            expected: alg.dim(),
            found: conn.dim(),
        });
    }
    Ok(Tensor::from_fn(conn.dim(), 1, 2, |ix| {
        let (k, i, j) = (ix[0], ix[1], ix[2]);
        conn.coeff(k, i, j) - conn.coeff(k, j, i) - alg.c(k, i, j)
    }))
}

/// `∇t` as a tensor of type `(r, s+1)`; the differentiation slot is last.
/// All components are constant, so only the connection terms remain.
pub fn covariant_derivative(conn: &Connection, t: &Tensor) -> Result<Tensor> {
    let (r, s) = t.ranks();
    if r + s == 0 {
        return Err(Error::Rank("cannot differentiate a scalar".into()));
    }
    if t.dim() != conn.dim() {
        return Err(Error::Dimension {
            expected: conn.dim(),
            found: t.dim(),
        });
    }
    let n = t.dim();
    let order = r + s;
    Ok(Tensor::from_fn(n, r, s + 1, |ix| {
        let x = ix[order];
        let mut base = ix[..order].to_vec();
        let mut acc = Scalar::zero();
        for slot in 0..order {
            let fixed = base[slot];
            for m in 0..n {
                let coeff = if slot < r {
                    conn.coeff(fixed, x, m)
                } else {
                    conn.coeff(m, x, fixed)
                };
                if coeff.is_zero() {
                    continue;
                }
                base[slot] = m;
                let term = coeff * t.at(&base);
                if slot < r {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            base[slot] = fixed;
        }
        acc
    }))
}

/// Levi-Civita connection of an invariant metric,
/// `g(∇_i X_j, X_k) = ½(g([X_i,X_j],X_k) + g([X_k,X_i],X_j) + g([X_k,X_j],X_i))`.
/// Torsion-freeness and `∇g = 0` are verified before returning.
pub fn koszul(alg: &LieAlgebraModel, metric: &Tensor, metric_inv: &Tensor) -> Result<Connection> {
    let n = alg.dim();
    if metric.dim() != n || metric_inv.dim() != n {
        return Err(Error::Dimension {
            expected: n,
            found: metric.dim().max(metric_inv.dim()),
        });
    }
    let product = metric_inv.outer(metric)?.contract(1, 2)?;
    if product != Tensor::identity(n) {
        return Err(Error::DegenerateMetric);
    }
    let half = Scalar::ratio(1, 2);
    // lowered[i, j, k] = g(∇_i X_j, X_k)
    let lowered = Tensor::from_fn(n, 0, 3, |ix| {
        let (i, j, k) = (ix[0], ix[1], ix[2]);
        let sum: Scalar = (0..n)
            .map(|m| {
                alg.c(m, i, j) * metric.at(&[m, k])
                    + alg.c(m, k, i) * metric.at(&[m, j])
                    + alg.c(m, k, j) * metric.at(&[m, i])
            })
            .sum();
        sum * &half
    });
    let gamma = Tensor::from_fn(n, 1, 2, |ix| {
        let (l, i, j) = (ix[0], ix[1], ix[2]);
        (0..n)
            .map(|k| metric_inv.at(&[l, k]) * lowered.at(&[i, j, k]))
            .sum()
    });
    let conn = Connection::new(gamma)?;
    if let Some(at) = first_nonzero(&torsion(&conn, alg)?) {
        return Err(Error::consistency("Levi-Civita torsion vanishes", at));
    }
    if let Some(at) = first_nonzero(&covariant_derivative(&conn, metric)?) {
        return Err(Error::consistency("Levi-Civita connection is metric", at));
    }
    Ok(conn)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{build_family, FamilyParams};
    use crate::manifold::pair_swap;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn abelian_connection_vanishes() {
        let alg = LieAlgebraModel::abelian(4).unwrap();
        let g = crate::manifold::diagonal_metric(&[s(2), s(2), s(-3), s(-3)]);
        let inv = crate::manifold::diagonal_metric(&[
            Scalar::ratio(1, 2),
            Scalar::ratio(1, 2),
            Scalar::ratio(-1, 3),
            Scalar::ratio(-1, 3),
        ]);
        let inv = Tensor::from_matrix(&inv.to_matrix(), 2, 0).unwrap();
        let conn = koszul(&alg, &g, &inv).unwrap();
        assert!(conn.gamma().is_zero());
        assert!(covariant_derivative(&conn, &pair_swap(4)).unwrap().is_zero());
    }

    #[test]
    fn wrong_inverse_is_rejected() {
        let alg = LieAlgebraModel::abelian(4).unwrap();
        let g = Tensor::from_matrix(&crate::linalg::identity(4), 0, 2).unwrap();
        let bad = Tensor::zeros(4, 2, 0);
        assert!(matches!(koszul(&alg, &g, &bad), Err(Error::DegenerateMetric)));
    }

    #[test]
    fn torsion_is_antisymmetric() {
        let alg = LieAlgebraModel::abelian(4).unwrap();
        let mut gamma = Tensor::zeros(4, 1, 2);
        gamma.set(&[0, 0, 1], s(1));
        let t = torsion(&Connection::new(gamma).unwrap(), &alg).unwrap();
        assert_eq!(t.at(&[0, 0, 1]), &s(1));
        assert_eq!(t.at(&[0, 1, 0]), &s(-1));
        let nonzero = t.components().iter().filter(|c| !c.is_zero()).count();
        assert_eq!(nonzero, 2);
    }

    #[test]
    fn family_nabla_x1_x1() {
        let m = build_family(&FamilyParams::from_ints(1, 2, 1).unwrap()).unwrap();
        let conn = koszul(m.algebra(), m.g(), m.g_inv()).unwrap();
        assert_eq!(conn.nabla(0, 0), vec![s(0), s(-4), s(-1), s(1)]);
        let twin = koszul(m.algebra(), m.g_twin(), m.g_twin_inv()).unwrap();
        assert!(torsion(&twin, m.algebra()).unwrap().is_zero());
        assert!(covariant_derivative(&twin, m.g_twin()).unwrap().is_zero());
    }

    #[test]
    fn derivative_of_vector_and_form_follow_leibniz() {
        // For invariant v and α, ∇(α(v)) = 0 gives (∇α)(v) + α(∇v) = 0.
        let m = build_family(&FamilyParams::from_ints(2, -1, -1).unwrap()).unwrap();
        let conn = koszul(m.algebra(), m.g(), m.g_inv()).unwrap();
        let v = Tensor::vector(vec![s(1), s(-2), s(3), s(5)]);
        let a = Tensor::covector(vec![s(4), s(0), s(-1), s(2)]);
        let dv = covariant_derivative(&conn, &v).unwrap();
        let da = covariant_derivative(&conn, &a).unwrap();
        for x in 0..4 {
            let lhs: Scalar = (0..4).map(|k| da.at(&[k, x]) * v.at(&[k])).sum();
            let rhs: Scalar = (0..4).map(|k| a.at(&[k]) * dv.at(&[k, x])).sum();
            assert!((lhs + rhs).is_zero());
        }
    }
}

//! Left-invariant almost paracomplex structures with a compatible metric.

use crate::algebra::LieAlgebraModel;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::Scalar;
use crate::tensor::{first_difference, Tensor};

/// A Lie algebra with an almost paracomplex structure `P` and a compatible
/// metric `g`, together with the twin metric `g̃(x, y) = g(x, Py)` and both
/// inverses. Build with [`build_manifold`]; all fields are then immutable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WManifold {
    algebra: LieAlgebraModel,
    p: Tensor,
    g: Tensor,
    g_inv: Tensor,
    g_twin: Tensor,
    g_twin_inv: Tensor,
}

fn square(t: &Tensor, ranks: (usize, usize), dim: usize, name: &str) -> Result<()> {
    if t.ranks() != ranks {
        return Err(Error::Rank(format!(
            "{name} must be of type {ranks:?}, got {:?}",
            t.ranks()
        )));
    }
    if t.dim() != dim {
        return Err(Error::Dimension {
            expected: dim,
            found: t.dim(),
        });
    }
    Ok(())
}

fn invert(metric: &Tensor) -> Result<Tensor> {
    let inv = linalg::inverse(&metric.to_matrix()).ok_or(Error::DegenerateMetric)?;
    Tensor::from_matrix(&inv, 2, 0)
}

/// `Σ_k g_ik P^k_j`, i.e. `g(X_i, P X_j)`.
fn twist(g: &Tensor, p: &Tensor) -> Tensor {
    let n = g.dim();
    Tensor::from_fn(n, 0, 2, |ix| {
        (0..n).map(|k| g.at(&[ix[0], k]) * p.at(&[k, ix[1]])).sum()
    })
}

fn check_symmetric(g: &Tensor) -> Result<()> {
    let n = g.dim();
    for i in 0..n {
        for j in i + 1..n {
            if g.at(&[i, j]) != g.at(&[j, i]) {
                return Err(Error::AsymmetricMetric {
                    at: vec![i + 1, j + 1],
                });
            }
        }
    }
    Ok(())
}

/// `g(PX_i, PX_j) - g(X_i, X_j)` as a (0,2) tensor.
fn compatibility_defect(g: &Tensor, p: &Tensor) -> Tensor {
    let n = g.dim();
    Tensor::from_fn(n, 0, 2, |ix| {
        let mut acc = -g.at(ix);
        for a in 0..n {
            let pa = p.at(&[a, ix[0]]);
            if pa.is_zero() {
                continue;
            }
            for b in 0..n {
                acc += pa * p.at(&[b, ix[1]]) * g.at(&[a, b]);
            }
        }
        acc
    })
}

/// Validates the algebra and every structural axiom, then derives `g̃` and
/// the inverse metrics.
pub fn build_manifold(algebra: LieAlgebraModel, p: Tensor, g: Tensor) -> Result<WManifold> {
    let report = algebra.validate();
    if !report.is_valid() {
        return Err(Error::InvalidAlgebra(report.summary()));
    }
    let n = algebra.dim();
    square(&p, (1, 1), n, "P")?;
    square(&g, (0, 2), n, "g")?;

    let p_squared = linalg::multiply(&p.to_matrix(), &p.to_matrix());
    let p2 = Tensor::from_matrix(&p_squared, 1, 1)?;
    if let Some(at) = first_difference(&p2, &Tensor::identity(n)) {
        return Err(Error::NotInvolution {
            at: at.into_iter().map(|i| i + 1).collect(),
        });
    }
    let trace = p.contract(0, 1)?.value().clone();
    if !trace.is_zero() {
        return Err(Error::NonZeroTrace(trace.to_string()));
    }

    check_symmetric(&g)?;
    if linalg::determinant(&g.to_matrix()).is_zero() {
        return Err(Error::DegenerateMetric);
    }
    if let Some(at) = crate::tensor::first_nonzero(&compatibility_defect(&g, &p)) {
        return Err(Error::Incompatible {
            at: at.into_iter().map(|i| i + 1).collect(),
        });
    }

    let g_inv = invert(&g)?;
    let g_twin = twist(&g, &p);
    let g_twin_inv = invert(&g_twin)?;

    // g̃ inherits symmetry and compatibility from g and P.
    check_symmetric(&g_twin).map_err(|_| Error::consistency("twin metric symmetric", vec![]))?;
    if let Some(at) = crate::tensor::first_nonzero(&compatibility_defect(&g_twin, &p)) {
        return Err(Error::consistency("twin metric compatible with P", at));
    }

    Ok(WManifold {
        algebra,
        p,
        g,
        g_inv,
        g_twin,
        g_twin_inv,
    })
}

impl WManifold {
    pub fn algebra(&self) -> &LieAlgebraModel {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Half the dimension.
    pub fn n(&self) -> usize {
        self.dim() / 2
    }

    pub fn p(&self) -> &Tensor {
        &self.p
    }

    pub fn g(&self) -> &Tensor {
        &self.g
    }

    pub fn g_inv(&self) -> &Tensor {
        &self.g_inv
    }

    pub fn g_twin(&self) -> &Tensor {
        &self.g_twin
    }

    pub fn g_twin_inv(&self) -> &Tensor {
        &self.g_twin_inv
    }

    /// `P v`.
    pub fn apply_p(&self, v: &[Scalar]) -> Vec<Scalar> {
        crate::tensor::apply(&self.p, v)
    }

    /// `P X_i` as a component vector.
    pub fn p_column(&self, i: usize) -> Vec<Scalar> {
        (0..self.dim()).map(|k| self.p.at(&[k, i]).clone()).collect()
    }

    /// The twin interchange: the same algebra and `P`, with `g̃` as the metric.
    /// Its own twin metric is `g` again.
    pub fn twin(&self) -> Result<WManifold> {
        build_manifold(self.algebra.clone(), self.p.clone(), self.g_twin.clone())
    }

    /// Block direct sum of two manifolds.
    pub fn direct_sum(&self, other: &WManifold) -> Result<WManifold> {
        let a = self.dim();
        let algebra = self.algebra.direct_sum(&other.algebra)?;
        let n = algebra.dim();
        let block = |left: &Tensor, right: &Tensor, contra: usize| {
            Tensor::from_fn(n, contra, 2 - contra, |ix| {
                let (i, j) = (ix[0], ix[1]);
                if i < a && j < a {
                    left.at(&[i, j]).clone()
                } else if i >= a && j >= a {
                    right.at(&[i - a, j - a]).clone()
                } else {
                    Scalar::zero()
                }
            })
        };
        build_manifold(algebra, block(&self.p, &other.p, 1), block(&self.g, &other.g, 0))
    }
}

/// Rescaled eigenbasis of an adapted `P`: `a_{2k-1} = e_{2k-1} - e_{2k}`,
/// `a_{2k} = e_{2k-1} + e_{2k}` (the `1/√2` normalisation is dropped).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenbasis {
    /// Columns are the new basis vectors in old coordinates.
    pub change: Matrix,
    /// `P` in the new basis.
    pub p: Matrix,
    /// `g̃` in the new basis.
    pub g_twin: Matrix,
    /// `(positive, negative, zero)` pivot counts of `g̃`.
    pub twin_signature: (usize, usize, usize),
}

fn is_adapted(p: &Tensor) -> bool {
    let n = p.dim();
    (0..n).all(|k| {
        (0..n).all(|i| {
            let partner = i ^ 1;
            let entry = p.at(&[k, i]);
            if k == partner {
                entry.is_one()
            } else {
                entry.is_zero()
            }
        })
    })
}

pub fn eigenbasis(m: &WManifold) -> Result<Eigenbasis> {
    if !is_adapted(m.p()) {
        return Err(Error::NotAdapted);
    }
    let n = m.dim();
    let change: Matrix = (0..n)
        .map(|row| {
            (0..n)
                .map(|col| {
                    let pair = col / 2;
                    if row == 2 * pair {
                        Scalar::one()
                    } else if row == 2 * pair + 1 {
                        if col % 2 == 0 {
                            -Scalar::one()
                        } else {
                            Scalar::one()
                        }
                    } else {
                        Scalar::zero()
                    }
                })
                .collect()
        })
        .collect();
    let change_inv = linalg::inverse(&change).expect("eigenbasis change is invertible");
    let p = linalg::multiply(&linalg::multiply(&change_inv, &m.p().to_matrix()), &change);
    let g_twin = linalg::multiply(
        &linalg::multiply(&linalg::transpose(&change), &m.g_twin().to_matrix()),
        &change,
    );
    let twin_signature = linalg::signature(&g_twin);
    Ok(Eigenbasis {
        change,
        p,
        g_twin,
        twin_signature,
    })
}

/// `P` swapping `X_{2k-1} <-> X_{2k}`.
pub fn pair_swap(dim: usize) -> Tensor {
    Tensor::from_fn(dim, 1, 1, |ix| {
        if ix[0] == ix[1] ^ 1 {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

/// Diagonal (0,2) metric.
pub fn diagonal_metric(values: &[Scalar]) -> Tensor {
    let n = values.len();
    Tensor::from_fn(n, 0, 2, |ix| {
        if ix[0] == ix[1] {
            values[ix[0]].clone()
        } else {
            Scalar::zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{build_family, FamilyParams};

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn standard_g() -> Tensor {
        diagonal_metric(&[s(1), s(1), s(-1), s(-1)])
    }

    fn abelian() -> WManifold {
        build_manifold(LieAlgebraModel::abelian(4).unwrap(), pair_swap(4), standard_g()).unwrap()
    }

    #[test]
    fn twin_metric_of_standard_structure() {
        let m = abelian();
        let gt = m.g_twin();
        for i in 0..4 {
            for j in 0..4 {
                let expected = match (i, j) {
                    (0, 1) | (1, 0) => s(1),
                    (2, 3) | (3, 2) => s(-1),
                    _ => s(0),
                };
                assert_eq!(gt.at(&[i, j]), &expected, "g̃[{i}][{j}]");
            }
        }
        assert_eq!(m.g_inv().to_matrix(), m.g().to_matrix());
        assert_eq!(m.g_twin_inv().to_matrix(), m.g_twin().to_matrix());
    }

    #[test]
    fn twin_of_twin_is_original() {
        let m = build_family(&FamilyParams::from_ints(1, 2, 1).unwrap()).unwrap();
        let tt = m.twin().unwrap().twin().unwrap();
        assert_eq!(tt, m);
        // g̃(x, Py) = g(x, y)
        assert_eq!(twist(m.g_twin(), m.p()), *m.g());
    }

    #[test]
    fn rejects_non_involution() {
        let mut p = pair_swap(4);
        p.set(&[1, 0], s(2));
        let err = build_manifold(LieAlgebraModel::abelian(4).unwrap(), p, standard_g()).unwrap_err();
        assert!(matches!(err, Error::NotInvolution { .. }));
    }

    #[test]
    fn rejects_nonzero_trace() {
        let err = build_manifold(
            LieAlgebraModel::abelian(4).unwrap(),
            Tensor::identity(4),
            standard_g(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonZeroTrace(_)));
    }

    #[test]
    fn rejects_degenerate_metric() {
        let g = diagonal_metric(&[s(1), s(1), s(0), s(0)]);
        let err = build_manifold(LieAlgebraModel::abelian(4).unwrap(), pair_swap(4), g).unwrap_err();
        assert!(matches!(err, Error::DegenerateMetric));
    }

    #[test]
    fn rejects_incompatible_metric() {
        let g = diagonal_metric(&[s(1), s(-1), s(1), s(-1)]);
        let err = build_manifold(LieAlgebraModel::abelian(4).unwrap(), pair_swap(4), g).unwrap_err();
        assert!(matches!(err, Error::Incompatible { .. }));
    }

    #[test]
    fn rejects_asymmetric_metric() {
        let mut g = standard_g();
        g.set(&[0, 1], s(1));
        let err = build_manifold(LieAlgebraModel::abelian(4).unwrap(), pair_swap(4), g).unwrap_err();
        assert!(matches!(err, Error::AsymmetricMetric { .. }));
    }

    #[test]
    fn rejects_invalid_algebra() {
        let mut c = Tensor::zeros(4, 1, 2);
        c.set(&[0, 0, 1], s(1));
        let alg = LieAlgebraModel::new(crate::algebra::default_labels(4), c).unwrap();
        let err = build_manifold(alg, pair_swap(4), standard_g()).unwrap_err();
        assert!(matches!(err, Error::InvalidAlgebra(_)));
    }

    #[test]
    fn eigenbasis_diagonalises_p() {
        let e = eigenbasis(&abelian()).unwrap();
        let diag: Vec<Scalar> = (0..4).map(|i| e.p[i][i].clone()).collect();
        assert_eq!(diag, vec![s(-1), s(1), s(-1), s(1)]);
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert!(e.p[i][j].is_zero());
                }
            }
        }
        assert_eq!(e.twin_signature, (2, 2, 0));
        assert!(e.g_twin[0][0].is_negative());
        assert!(e.g_twin[1][1].is_positive());
    }

    #[test]
    fn eigenbasis_requires_adapted_p() {
        // P = diag-block swap of X1<->X3, X2<->X4: involutive, traceless, not adapted.
        let p = Tensor::from_fn(4, 1, 1, |ix| {
            if ix[0] == (ix[1] + 2) % 4 {
                s(1)
            } else {
                s(0)
            }
        });
        let g = diagonal_metric(&[s(1), s(1), s(1), s(1)]);
        let m = build_manifold(LieAlgebraModel::abelian(4).unwrap(), p, g).unwrap();
        assert!(matches!(eigenbasis(&m), Err(Error::NotAdapted)));
    }
}

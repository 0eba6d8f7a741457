//! Lie algebras given by structure constants.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tensor::Tensor;

/// A real Lie algebra with basis `X_1..X_dim` and brackets
/// `[X_i, X_j] = c^k_ij X_k`, the constants stored at `[k, i, j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraModel {
    labels: Vec<String>,
    constants: Tensor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `c^k_ij + c^k_ji != 0`; indices are 1-based `[i, j, k]`.
    Antisymmetry { indices: [usize; 3] },
    /// The Jacobi sum over `(i, j, l)` has a nonzero `X_m` component;
    /// indices are 1-based `[i, j, l, m]`.
    Jacobi { indices: [usize; 4], value: Scalar },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        match self.violations.first() {
            None => "valid".to_string(),
            Some(Violation::Antisymmetry { indices: [i, j, k] }) => format!(
                "{} violation(s); first: c^{k}_{{{i}{j}}} + c^{k}_{{{j}{i}}} != 0",
                self.violations.len()
            ),
            Some(Violation::Jacobi {
                indices: [i, j, l, m],
                value,
            }) => format!(
                "{} violation(s); first: Jacobi sum for (X{i}, X{j}, X{l}) has X{m}-component {value}",
                self.violations.len()
            ),
        }
    }
}

impl LieAlgebraModel {
    pub fn new(labels: Vec<String>, constants: Tensor) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(Error::OddDimension(dim));
        }
        if constants.ranks() != (1, 2) {
            return Err(Error::Rank("structure constants must be a (1,2) tensor".into()));
        }
        if constants.dim() != dim {
            return Err(Error::Dimension {
                expected: dim,
                found: constants.dim(),
            });
        }
        Ok(LieAlgebraModel { labels, constants })
    }

    /// The Abelian algebra of the given dimension with labels `X1..Xdim`.
    pub fn abelian(dim: usize) -> Result<Self> {
        LieAlgebraModel::new(default_labels(dim), Tensor::zeros(dim, 1, 2))
    }

    /// Builds from a list of brackets `[X_i, X_j] = Σ coeffs[k] X_k` with
    /// 0-based `i < j` or `i > j`; the antisymmetric partner is filled in.
    pub fn from_brackets(
        labels: Vec<String>,
        brackets: &[(usize, usize, Vec<Scalar>)],
    ) -> Result<Self> {
        let dim = labels.len();
        let mut c = Tensor::zeros(dim, 1, 2);
        for (i, j, coeffs) in brackets {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim || coeffs.len() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    found: i.max(j).max(coeffs.len()),
                });
            }
            for (k, v) in coeffs.iter().enumerate() {
                c.set(&[k, i, j], v.clone());
                c.set(&[k, j, i], -v);
            }
        }
        LieAlgebraModel::new(labels, c)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn constants(&self) -> &Tensor {
        &self.constants
    }

    /// `c^k_ij`.
    pub fn c(&self, k: usize, i: usize, j: usize) -> &Scalar {
        self.constants.at(&[k, i, j])
    }

    /// Bracket of two vectors given by components.
    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        crate::tensor::apply2(&self.constants, u, v)
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.is_zero()
    }

    /// Checks antisymmetry and the Jacobi identity on every basis triple.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let mut violations = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !(self.c(k, i, j) + self.c(k, j, i)).is_zero() {
                        violations.push(Violation::Antisymmetry {
                            indices: [i + 1, j + 1, k + 1],
                        });
                    }
                }
            }
        }
        // [X_i,[X_j,X_l]] + [X_j,[X_l,X_i]] + [X_l,[X_i,X_j]]
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    for m in 0..n {
                        let sum: Scalar = (0..n)
                            .map(|s| {
                                self.c(s, j, l) * self.c(m, i, s)
                                    + self.c(s, l, i) * self.c(m, j, s)
                                    + self.c(s, i, j) * self.c(m, l, s)
                            })
                            .sum();
                        if !sum.is_zero() {
                            violations.push(Violation::Jacobi {
                                indices: [i + 1, j + 1, l + 1, m + 1],
                                value: sum,
                            });
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// Block direct sum `self ⊕ other`; basis of `other` follows that of `self`.
    pub fn direct_sum(&self, other: &LieAlgebraModel) -> Result<LieAlgebraModel> {
        let (a, b) = (self.dim(), other.dim());
        let n = a + b;
        let c = Tensor::from_fn(n, 1, 2, |ix| {
            let (k, i, j) = (ix[0], ix[1], ix[2]);
            if k < a && i < a && j < a {
                self.c(k, i, j).clone()
            } else if k >= a && i >= a && j >= a {
                other.c(k - a, i - a, j - a).clone()
            } else {
                Scalar::zero()
            }
        });
        LieAlgebraModel::new(default_labels(n), c)
    }
}

pub fn default_labels(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("X{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn abelian_is_valid() {
        assert!(LieAlgebraModel::abelian(4).unwrap().validate().is_valid());
    }

    #[test]
    fn odd_dimension_rejected() {
        assert!(matches!(
            LieAlgebraModel::abelian(3),
            Err(Error::OddDimension(3))
        ));
    }

    #[test]
    fn heisenberg_plus_line_is_valid() {
        let alg = LieAlgebraModel::from_brackets(
            default_labels(4),
            &[(0, 2, vec![s(0), s(1), s(0), s(0)])],
        )
        .unwrap();
        assert!(alg.validate().is_valid());
    }

    #[test]
    fn jacobi_failure_is_reported() {
        // [X1,[X2,X3]] + [X2,[X3,X1]] + [X3,[X1,X2]] = [X2,-X1] = X3.
        let alg = LieAlgebraModel::from_brackets(
            default_labels(4),
            &[
                (0, 1, vec![s(0), s(0), s(1), s(0)]),
                (0, 2, vec![s(1), s(0), s(0), s(0)]),
            ],
        )
        .unwrap();
        let report = alg.validate();
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .all(|v| matches!(v, Violation::Jacobi { .. })));
        assert!(report.summary().contains("Jacobi"));
    }

    #[test]
    fn antisymmetry_failure_is_reported() {
        let mut c = Tensor::zeros(2, 1, 2);
        c.set(&[0, 0, 1], s(1));
        let alg = LieAlgebraModel::new(default_labels(2), c).unwrap();
        let report = alg.validate();
        assert!(report
            .violations
            .contains(&Violation::Antisymmetry { indices: [1, 2, 1] }));
    }

    #[test]
    fn direct_sum_is_blockwise() {
        let h = LieAlgebraModel::from_brackets(
            default_labels(2),
            &[(0, 1, vec![s(1), s(0)])],
        )
        .unwrap();
        let sum = h.direct_sum(&h).unwrap();
        assert_eq!(sum.dim(), 4);
        assert_eq!(sum.c(2, 2, 3), &s(1));
        assert_eq!(sum.c(0, 0, 1), &s(1));
        assert!(sum.c(0, 2, 3).is_zero());
        assert!(sum.validate().is_valid());
    }
}

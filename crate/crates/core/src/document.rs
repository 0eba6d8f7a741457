//! JSON form of a manifold: basis, brackets, metric and `P`, all indices
//! 1-based and every number an exact rational string.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebraModel;
use crate::error::{Error, Result};
use crate::manifold::{build_manifold, WManifold};
use crate::scalar::Scalar;
use crate::tensor::Tensor;

/// `[X_i, X_j] = Σ_k coeffs[k] X_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<usize, Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldDocument {
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketEntry>,
    /// `metric[i][j] = g(X_i, X_j)`.
    pub metric: Vec<Vec<Scalar>>,
    /// `P X_j = Σ_i P[i][j] X_i`.
    #[serde(rename = "P")]
    pub p: Vec<Vec<Scalar>>,
}

fn doc_err(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

fn check_square(name: &str, rows: &[Vec<Scalar>], dim: usize) -> Result<()> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(doc_err(format!("{name} must be a {dim}x{dim} array")));
    }
    Ok(())
}

impl ManifoldDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: ManifoldDocument = serde_json::from_str(text)?;
        doc.check_shape()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    /// Index ranges and array sizes; the mathematical axioms are checked by
    /// [`ManifoldDocument::algebra`] and [`ManifoldDocument::to_manifold`].
    pub fn check_shape(&self) -> Result<()> {
        let dim = self.dim;
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(doc_err(format!("dim must be a positive even integer, got {dim}")));
        }
        if self.basis.len() != dim {
            return Err(doc_err(format!("basis has {} names, dim is {dim}", self.basis.len())));
        }
        let in_range = |k: usize| (1..=dim).contains(&k);
        let mut seen = std::collections::BTreeSet::new();
        for b in &self.brackets {
            if !in_range(b.i) || !in_range(b.j) {
                return Err(doc_err(format!("bracket [{}, {}]: index out of 1..{dim}", b.i, b.j)));
            }
            if let Some(k) = b.coeffs.keys().find(|&&k| !in_range(k)) {
                return Err(doc_err(format!("bracket [{}, {}]: coefficient index {k} out of 1..{dim}", b.i, b.j)));
            }
            if b.i == b.j {
                return Err(doc_err(format!("bracket [{}, {}] of a basis vector with itself", b.i, b.j)));
            }
            if !seen.insert((b.i.min(b.j), b.i.max(b.j))) {
                return Err(doc_err(format!("bracket [{}, {}] given twice", b.i, b.j)));
            }
        }
        check_square("metric", &self.metric, dim)?;
        check_square("P", &self.p, dim)
    }

    /// The algebra, without checking the Jacobi identity.
    pub fn algebra(&self) -> Result<LieAlgebraModel> {
        self.check_shape()?;
        let brackets: Vec<(usize, usize, Vec<Scalar>)> = self
            .brackets
            .iter()
            .map(|b| {
                let coeffs = (1..=self.dim)
                    .map(|k| b.coeffs.get(&k).cloned().unwrap_or_else(Scalar::zero))
                    .collect();
                (b.i - 1, b.j - 1, coeffs)
            })
            .collect();
        LieAlgebraModel::from_brackets(self.basis.clone(), &brackets)
    }

    pub fn to_manifold(&self) -> Result<WManifold> {
        let alg = self.algebra()?;
        build_manifold(
            alg,
            Tensor::from_matrix(&self.p, 1, 1)?,
            Tensor::from_matrix(&self.metric, 0, 2)?,
        )
    }

    /// Brackets `[X_i, X_j]` with `i < j` that are nonzero, listing nonzero
    /// coefficients only.
    pub fn from_manifold(m: &WManifold) -> Self {
        let alg = m.algebra();
        let n = alg.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let coeffs: BTreeMap<usize, Scalar> = (0..n)
                    .filter(|&k| !alg.c(k, i, j).is_zero())
                    .map(|k| (k + 1, alg.c(k, i, j).clone()))
                    .collect();
                if !coeffs.is_empty() {
                    brackets.push(BracketEntry {
                        i: i + 1,
                        j: j + 1,
                        coeffs,
                    });
                }
            }
        }
        ManifoldDocument {
            dim: n,
            basis: alg.labels().to_vec(),
            brackets,
            metric: m.g().to_matrix(),
            p: m.p().to_matrix(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{build_family, FamilyParams};

    #[test]
    fn round_trip_family() {
        let m = build_family(&FamilyParams::from_ints(1, 2, 1).unwrap()).unwrap();
        let doc = ManifoldDocument::from_manifold(&m);
        let text = doc.to_json();
        let back = ManifoldDocument::parse(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_manifold().unwrap(), m);
    }

    #[test]
    fn rationals_stay_exact() {
        let p = FamilyParams::new(Scalar::ratio(1, 2), Scalar::ratio(-1, 3), Scalar::one()).unwrap();
        let m = build_family(&p).unwrap();
        let text = ManifoldDocument::from_manifold(&m).to_json();
        assert!(text.contains("\"1/2\""));
        assert!(!text.contains('.'));
        assert_eq!(ManifoldDocument::parse(&text).unwrap().to_manifold().unwrap(), m);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(ManifoldDocument::parse(""), Err(Error::Json(_))));
        assert!(matches!(ManifoldDocument::parse("{\"dim\": 4}"), Err(Error::Json(_))));
        let m = build_family(&FamilyParams::from_ints(1, 2, 1).unwrap()).unwrap();
        let text = ManifoldDocument::from_manifold(&m).to_json();
        let decimal = text.replacen("\"-1\"", "\"-1.0\"", 1);
        assert!(ManifoldDocument::parse(&decimal).is_err());
        let mut doc = ManifoldDocument::from_manifold(&m);
        doc.brackets[0].i = 9;
        assert!(matches!(
            ManifoldDocument::parse(&doc.to_json()),
            Err(Error::Document(_))
        ));
    }

    #[test]
    fn validation_errors_surface_from_to_manifold() {
        let m = build_family(&FamilyParams::from_ints(1, 2, 1).unwrap()).unwrap();
        let mut doc = ManifoldDocument::from_manifold(&m);
        doc.brackets[0].coeffs.insert(1, Scalar::from_int(7));
        assert!(matches!(doc.to_manifold(), Err(Error::InvalidAlgebra(_))));
        let mut doc = ManifoldDocument::from_manifold(&m);
        doc.metric[0][0] = Scalar::from_int(2);
        assert!(matches!(doc.to_manifold(), Err(Error::Incompatible { .. })));
    }
}

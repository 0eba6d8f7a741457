//! Fixed examples the verification suite is run on.

use crate::algebra::{default_labels, LieAlgebraModel};
use crate::family::{build_family, default_grid, FamilyParams};
use crate::manifold::{build_manifold, diagonal_metric, pair_swap, WManifold};
use crate::parallel::{map_items, Execution};
use crate::scalar::Scalar;
use crate::twin::{invariance_suite, VerificationReport};

/// `diag(1, 1, -1, -1, 1, 1, ...)`, compatible with the pair swap.
fn split_metric(dim: usize) -> crate::tensor::Tensor {
    let values: Vec<Scalar> = (0..dim)
        .map(|i| if (i / 2) % 2 == 0 { Scalar::one() } else { -Scalar::one() })
        .collect();
    diagonal_metric(&values)
}

/// Abelian algebra of even dimension `dim` with the pair swap.
pub fn abelian(dim: usize) -> WManifold {
    build_manifold(LieAlgebraModel::abelian(dim).expect("even dimension"), pair_swap(dim), split_metric(dim))
        .expect("abelian structure is valid")
}

/// The Heisenberg algebra plus a line: `[X1, X3] = X2`.
pub fn heisenberg() -> WManifold {
    let one = Scalar::one;
    let z = Scalar::zero;
    let alg = LieAlgebraModel::from_brackets(default_labels(4), &[(0, 2, vec![z(), one(), z(), z()])])
        .expect("valid algebra");
    build_manifold(alg, pair_swap(4), split_metric(4)).expect("valid structure")
}

fn family(l1: Scalar, l2: Scalar, e: i64) -> WManifold {
    build_family(&FamilyParams::new(l1, l2, Scalar::from_int(e)).expect("ε = ±1")).expect("family point")
}

/// Two 8-dimensional direct sums of family members, one of them with an
/// Abelian summand.
pub fn direct_sums() -> Vec<(String, WManifold)> {
    let int = Scalar::from_int;
    let a = family(int(1), int(2), 1);
    let b = family(int(2), int(1), -1);
    let c = family(Scalar::ratio(1, 2), int(-1), -1);
    vec![
        ("family(1,2,1) + family(2,1,-1)".into(), a.direct_sum(&b).expect("sum")),
        ("family(1/2,-1,-1) + abelian(4)".into(), c.direct_sum(&abelian(4)).expect("sum")),
    ]
}

/// Every family grid point, `abelian(4)` and the two direct sums.
pub fn corpus() -> Vec<(String, WManifold)> {
    let mut out: Vec<(String, WManifold)> = default_grid()
        .iter()
        .map(|p| (format!("family{p}"), build_family(p).expect("family point")))
        .collect();
    out.push(("abelian(4)".into(), abelian(4)));
    out.extend(direct_sums());
    out
}

/// Runs the invariance suite over `items`.
pub fn run_suite(items: &[(String, WManifold)], exec: Execution) -> Vec<(String, VerificationReport)> {
    map_items(items, exec, |(name, m)| (name.clone(), invariance_suite(m)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_members_build() {
        let c = corpus();
        assert_eq!(c.len(), 98 + 3);
        assert!(c.iter().rev().take(2).all(|(_, m)| m.dim() == 8));
    }

    #[test]
    fn abelian_higher_dimension() {
        let m = abelian(6);
        assert_eq!(m.dim(), 6);
        assert!(m.algebra().is_abelian());
    }

    #[test]
    fn heisenberg_is_not_abelian() {
        assert!(!heisenberg().algebra().is_abelian());
        assert!(heisenberg().algebra().validate().is_valid());
    }
}

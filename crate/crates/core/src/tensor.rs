//! Dense tensors over a fixed basis.
//!
//! A type-(r, s) tensor on a `dim`-dimensional space stores `dim^(r+s)`
//! components. The index tuple lists the `r` contravariant indices first,
//! then the `s` covariant ones, and is linearised row-major (last index
//! fastest). Every module uses this layout:
//!
//! * a connection `Γ^k_ij` (`∇_{X_i} X_j = Γ^k_ij X_k`) is stored at `[k, i, j]`;
//! * an endomorphism `P X_i = P^k_i X_k` is stored at `[k, i]`;
//! * a vector-valued curvature `R(X_i, X_j) X_k = R^l_ijk X_l` at `[l, i, j, k]`.

use crate::error::{Error, Result};
use crate::parallel;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tensor {
    dim: usize,
    contravariant: usize,
    covariant: usize,
    components: Vec<Scalar>,
}

impl std::fmt::Debug for Tensor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Tensor({},{}; dim {}) {:?}",
            self.contravariant, self.covariant, self.dim, self.components
        )
    }
}

/// Iterator over all index tuples of a given order, in storage order.
pub fn index_tuples(dim: usize, order: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = dim.pow(order as u32);
    (0..total).map(move |lin| unravel(lin, dim, order))
}

fn unravel(mut lin: usize, dim: usize, order: usize) -> Vec<usize> {
    let mut idx = vec![0; order];
    for slot in (0..order).rev() {
        idx[slot] = lin % dim;
        lin /= dim;
    }
    idx
}

impl Tensor {
    pub fn zeros(dim: usize, contravariant: usize, covariant: usize) -> Self {
        let len = dim.pow((contravariant + covariant) as u32);
        Tensor {
            dim,
            contravariant,
            covariant,
            components: vec![Scalar::zero(); len],
        }
    }

    /// Builds a tensor by evaluating `f` at every index tuple.
    pub fn from_fn<F>(dim: usize, contravariant: usize, covariant: usize, f: F) -> Self
    where
        F: Fn(&[usize]) -> Scalar + Sync + Send,
    {
        let order = contravariant + covariant;
        let len = dim.pow(order as u32);
        let components = parallel::map_range(len, |lin| f(&unravel(lin, dim, order)));
        Tensor {
            dim,
            contravariant,
            covariant,
            components,
        }
    }

    pub fn from_components(
        dim: usize,
        contravariant: usize,
        covariant: usize,
        components: Vec<Scalar>,
    ) -> Result<Self> {
        let len = dim.pow((contravariant + covariant) as u32);
        if components.len() != len {
            return Err(Error::Dimension {
                expected: len,
                found: components.len(),
            });
        }
        Ok(Tensor {
            dim,
            contravariant,
            covariant,
            components,
        })
    }

    /// Type-(1,1) identity.
    pub fn identity(dim: usize) -> Self {
        Tensor::from_fn(dim, 1, 1, |ix| {
            if ix[0] == ix[1] {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
    }

    pub fn scalar(value: Scalar, dim: usize) -> Self {
        Tensor {
            dim,
            contravariant: 0,
            covariant: 0,
            components: vec![value],
        }
    }

    /// A type-(1,0) vector from its components.
    pub fn vector(components: Vec<Scalar>) -> Self {
        Tensor {
            dim: components.len(),
            contravariant: 1,
            covariant: 0,
            components,
        }
    }

    /// A type-(0,1) form from its components.
    pub fn covector(components: Vec<Scalar>) -> Self {
        Tensor {
            dim: components.len(),
            contravariant: 0,
            covariant: 1,
            components,
        }
    }

    /// A rank-2 tensor from a square matrix, `rows[a][b]` at index `[a, b]`.
    pub fn from_matrix(rows: &[Vec<Scalar>], contravariant: usize, covariant: usize) -> Result<Self> {
        if contravariant + covariant != 2 {
            return Err(Error::Rank(format!(
                "matrix needs total rank 2, got ({contravariant},{covariant})"
            )));
        }
        let dim = rows.len();
        let mut components = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    found: row.len(),
                });
            }
            components.extend(row.iter().cloned());
        }
        Tensor::from_components(dim, contravariant, covariant, components)
    }

    pub fn to_matrix(&self) -> Vec<Vec<Scalar>> {
        assert_eq!(self.order(), 2, "to_matrix on a tensor of order {}", self.order());
        self.components
            .chunks(self.dim)
            .map(|row| row.to_vec())
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn contravariant(&self) -> usize {
        self.contravariant
    }

    pub fn covariant(&self) -> usize {
        self.covariant
    }

    pub fn order(&self) -> usize {
        self.contravariant + self.covariant
    }

    pub fn ranks(&self) -> (usize, usize) {
        (self.contravariant, self.covariant)
    }

    pub fn components(&self) -> &[Scalar] {
        &self.components
    }

    fn linear(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.order());
        idx.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.dim);
            acc * self.dim + i
        })
    }

    pub fn at(&self, idx: &[usize]) -> &Scalar {
        &self.components[self.linear(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: Scalar) {
        let lin = self.linear(idx);
        self.components[lin] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Scalar::is_zero)
    }

    /// The single component of a (0,0) tensor.
    pub fn value(&self) -> &Scalar {
        assert_eq!(self.order(), 0, "value() on a tensor of order {}", self.order());
        &self.components[0]
    }

    fn same_shape(&self, other: &Tensor) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.ranks() != other.ranks() {
            return Err(Error::Rank(format!(
                "({},{}) vs ({},{})",
                self.contravariant, self.covariant, other.contravariant, other.covariant
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        self.same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Tensor, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Tensor {
        Tensor {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| f(a, b))
                .collect(),
            ..self.clone_shape()
        }
    }

    fn clone_shape(&self) -> Tensor {
        Tensor {
            dim: self.dim,
            contravariant: self.contravariant,
            covariant: self.covariant,
            components: Vec::new(),
        }
    }

    pub fn scale(&self, factor: &Scalar) -> Tensor {
        Tensor {
            components: self.components.iter().map(|c| c * factor).collect(),
            ..self.clone_shape()
        }
    }

    pub fn neg(&self) -> Tensor {
        Tensor {
            components: self.components.iter().map(|c| -c).collect(),
            ..self.clone_shape()
        }
    }

    /// Tensor product; result index order is contra(self), contra(other),
    /// cov(self), cov(other).
    pub fn outer(&self, other: &Tensor) -> Result<Tensor> {
        if self.dim != other.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found: other.dim,
            });
        }
        let (ra, sa) = self.ranks();
        let (rb, _) = other.ranks();
        Ok(Tensor::from_fn(
            self.dim,
            ra + rb,
            self.covariant + other.covariant,
            |ix| {
                let mut ia: Vec<usize> = ix[..ra].to_vec();
                ia.extend_from_slice(&ix[ra + rb..ra + rb + sa]);
                let mut ib: Vec<usize> = ix[ra..ra + rb].to_vec();
                ib.extend_from_slice(&ix[ra + rb + sa..]);
                self.at(&ia) * other.at(&ib)
            },
        ))
    }

    fn check_slot(&self, slot: usize) -> Result<()> {
        if slot >= self.order() {
            return Err(Error::Slot(format!(
                "slot {slot} out of range for a tensor of order {}",
                self.order()
            )));
        }
        Ok(())
    }

    fn is_contravariant_slot(&self, slot: usize) -> bool {
        slot < self.contravariant
    }

    /// Sums over a contravariant slot paired with a covariant slot.
    pub fn contract(&self, slot_a: usize, slot_b: usize) -> Result<Tensor> {
        self.check_slot(slot_a)?;
        self.check_slot(slot_b)?;
        if slot_a == slot_b {
            return Err(Error::Slot("cannot contract a slot with itself".into()));
        }
        let (up, down) = match (
            self.is_contravariant_slot(slot_a),
            self.is_contravariant_slot(slot_b),
        ) {
            (true, false) => (slot_a, slot_b),
            (false, true) => (slot_b, slot_a),
            _ => {
                return Err(Error::Slot(format!(
                    "slots {slot_a} and {slot_b} have the same variance; raise or lower one first"
                )))
            }
        };
        let order = self.order();
        Ok(Tensor::from_fn(
            self.dim,
            self.contravariant - 1,
            self.covariant - 1,
            |ix| {
                let mut full = Vec::with_capacity(order);
                let mut rest = ix.iter();
                for slot in 0..order {
                    if slot == up || slot == down {
                        full.push(0);
                    } else {
                        full.push(*rest.next().unwrap());
                    }
                }
                (0..self.dim)
                    .map(|m| {
                        full[up] = m;
                        full[down] = m;
                        self.at(&full).clone()
                    })
                    .sum()
            },
        ))
    }

    /// Raises the covariant `slot` with `inverse_metric` (type (2,0)). The new
    /// contravariant index is appended after the existing contravariant ones.
    pub fn raise_index(&self, slot: usize, inverse_metric: &Tensor) -> Result<Tensor> {
        self.check_slot(slot)?;
        if self.is_contravariant_slot(slot) {
            return Err(Error::Slot(format!("slot {slot} is not covariant")));
        }
        if inverse_metric.ranks() != (2, 0) {
            return Err(Error::Rank("raising needs a (2,0) inverse metric".into()));
        }
        if inverse_metric.dim != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found: inverse_metric.dim,
            });
        }
        let r = self.contravariant;
        let order = self.order();
        Ok(Tensor::from_fn(self.dim, r + 1, self.covariant - 1, |ix| {
            // ix = [old contra..., new, remaining covariant...]
            let new = ix[r];
            let mut full = Vec::with_capacity(order);
            full.extend_from_slice(&ix[..r]);
            let mut rest = ix[r + 1..].iter();
            for s in r..order {
                if s == slot {
                    full.push(0);
                } else {
                    full.push(*rest.next().unwrap());
                }
            }
            (0..self.dim)
                .map(|m| {
                    full[slot] = m;
                    inverse_metric.at(&[new, m]) * self.at(&full)
                })
                .sum()
        }))
    }

    /// Lowers the contravariant `slot` with `metric` (type (0,2)); the new
    /// covariant index is inserted at `position` within the covariant block.
    pub fn lower_index(&self, slot: usize, metric: &Tensor, position: usize) -> Result<Tensor> {
        self.check_slot(slot)?;
        if !self.is_contravariant_slot(slot) {
            return Err(Error::Slot(format!("slot {slot} is not contravariant")));
        }
        if metric.ranks() != (0, 2) {
            return Err(Error::Rank("lowering needs a (0,2) metric".into()));
        }
        if metric.dim != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found: metric.dim,
            });
        }
        if position > self.covariant {
            return Err(Error::Slot(format!("insert position {position} out of range")));
        }
        let r = self.contravariant;
        let order = self.order();
        Ok(Tensor::from_fn(self.dim, r - 1, self.covariant + 1, |ix| {
            let new = ix[r - 1 + position];
            let mut full = Vec::with_capacity(order);
            let mut contra = ix[..r - 1].iter();
            for s in 0..r {
                if s == slot {
                    full.push(0);
                } else {
                    full.push(*contra.next().unwrap());
                }
            }
            for (p, &i) in ix[r - 1..].iter().enumerate() {
                if p != position {
                    full.push(i);
                }
            }
            (0..self.dim)
                .map(|m| {
                    full[slot] = m;
                    metric.at(&[m, new]) * self.at(&full)
                })
                .sum()
        }))
    }
}

impl Tensor {
    /// Precomposes the covariant `slot` with an endomorphism:
    /// `t'(.., x, ..) = t(.., E x, ..)`.
    pub fn compose(&self, slot: usize, endo: &Tensor) -> Result<Tensor> {
        self.check_slot(slot)?;
        if self.is_contravariant_slot(slot) {
            return Err(Error::Slot(format!("slot {slot} is not covariant")));
        }
        if endo.ranks() != (1, 1) || endo.dim != self.dim {
            return Err(Error::Rank("composition needs a (1,1) tensor of equal dimension".into()));
        }
        Ok(Tensor::from_fn(self.dim, self.contravariant, self.covariant, |ix| {
            let mut full = ix.to_vec();
            let x = ix[slot];
            (0..self.dim)
                .filter(|&m| !endo.at(&[m, x]).is_zero())
                .map(|m| {
                    full[slot] = m;
                    endo.at(&[m, x]) * self.at(&full)
                })
                .sum()
        }))
    }

    /// Reorders the slots: `t'(x_0, .., x_k) = t(x_perm[0], .., x_perm[k])`.
    /// Each slot must receive an index of its own variance.
    pub fn permute(&self, perm: &[usize]) -> Result<Tensor> {
        let order = self.order();
        let mut seen = vec![false; order];
        if perm.len() != order || perm.iter().any(|&p| p >= order || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Slot(format!("{perm:?} is not a permutation of {order} slots")));
        }
        if perm
            .iter()
            .enumerate()
            .any(|(s, &p)| self.is_contravariant_slot(s) != self.is_contravariant_slot(p))
        {
            return Err(Error::Slot("permutation mixes variances".into()));
        }
        Ok(Tensor::from_fn(self.dim, self.contravariant, self.covariant, |ix| {
            let src: Vec<usize> = perm.iter().map(|&p| ix[p]).collect();
            self.at(&src).clone()
        }))
    }
}

/// Exact equality of ranks, dimension and every component.
pub fn tensor_equal(a: &Tensor, b: &Tensor) -> bool {
    a == b
}

/// 0-based index tuple of the first differing component, or `None` when the
/// two tensors are equal. Shape mismatches report an empty tuple.
pub fn first_difference(a: &Tensor, b: &Tensor) -> Option<Vec<usize>> {
    if a.dim != b.dim || a.ranks() != b.ranks() {
        return Some(Vec::new());
    }
    a.components
        .iter()
        .zip(&b.components)
        .position(|(x, y)| x != y)
        .map(|lin| unravel(lin, a.dim, a.order()))
}

/// 0-based index of the first nonzero component.
pub fn first_nonzero(t: &Tensor) -> Option<Vec<usize>> {
    t.components
        .iter()
        .position(|x| !x.is_zero())
        .map(|lin| unravel(lin, t.dim, t.order()))
}

/// Applies a type-(1,1) endomorphism to a vector.
pub fn apply(endo: &Tensor, v: &[Scalar]) -> Vec<Scalar> {
    let n = endo.dim();
    (0..n)
        .map(|k| (0..n).map(|m| endo.at(&[k, m]) * &v[m]).sum())
        .collect()
}

/// Evaluates a (1,2) tensor on two vectors.
pub fn apply2(t: &Tensor, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    let n = t.dim();
    (0..n)
        .map(|k| {
            let mut acc = Scalar::zero();
            for (i, ui) in u.iter().enumerate() {
                if ui.is_zero() {
                    continue;
                }
                for (j, vj) in v.iter().enumerate() {
                    if !vj.is_zero() {
                        acc += ui * vj * t.at(&[k, i, j]);
                    }
                }
            }
            acc
        })
        .collect()
}

/// The `i`-th basis vector.
pub fn basis_vector(dim: usize, i: usize) -> Vec<Scalar> {
    (0..dim)
        .map(|k| if k == i { Scalar::one() } else { Scalar::zero() })
        .collect()
}

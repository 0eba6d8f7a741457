//! The eight classes `W0 .. W1+W2+W3`, decided from `F` and from `Φ`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::LieAlgebraModel;
use crate::error::{Error, Result};
use crate::manifold::WManifold;
use crate::scalar::Scalar;
use crate::structure::StructurePack;
use crate::tensor::Tensor;

/// A class label, represented by the set of basic classes it sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassLabel {
    W0,
    W1,
    W2,
    W3,
    W1W2,
    W1W3,
    W2W3,
    W1W2W3,
}

impl ClassLabel {
    pub const ALL: [ClassLabel; 8] = [
        ClassLabel::W0,
        ClassLabel::W1,
        ClassLabel::W2,
        ClassLabel::W3,
        ClassLabel::W1W2,
        ClassLabel::W1W3,
        ClassLabel::W2W3,
        ClassLabel::W1W2W3,
    ];

    /// Bit `k - 1` is set when `W_k` is a summand.
    pub fn summands(self) -> u8 {
        match self {
            ClassLabel::W0 => 0b000,
            ClassLabel::W1 => 0b001,
            ClassLabel::W2 => 0b010,
            ClassLabel::W3 => 0b100,
            ClassLabel::W1W2 => 0b011,
            ClassLabel::W1W3 => 0b101,
            ClassLabel::W2W3 => 0b110,
            ClassLabel::W1W2W3 => 0b111,
        }
    }

    /// Lattice order: inclusion of summand sets.
    pub fn is_below(self, other: ClassLabel) -> bool {
        self.summands() & !other.summands() == 0
    }

    pub fn name(self) -> &'static str {
        match self {
            ClassLabel::W0 => "W0",
            ClassLabel::W1 => "W1",
            ClassLabel::W2 => "W2",
            ClassLabel::W3 => "W3",
            ClassLabel::W1W2 => "W1+W2",
            ClassLabel::W1W3 => "W1+W3",
            ClassLabel::W2W3 => "W2+W3",
            ClassLabel::W1W2W3 => "W1+W2+W3",
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for ClassLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationResult {
    pub satisfied: BTreeSet<ClassLabel>,
    pub minimal: ClassLabel,
    /// Whether the `F` and `Φ` characterisations gave the same set.
    pub agreement: bool,
}

/// Values of the (0,3) tensor `(x,y,z) -> a(x,y) α(z) + b(x,y) β(z)`.
fn metric_times_forms(a: &Tensor, alpha: &Tensor, b: &Tensor, beta: &Tensor) -> Tensor {
    Tensor::from_fn(a.dim(), 0, 3, |ix| {
        a.at(&ix[..2]) * alpha.at(&ix[2..]) + b.at(&ix[..2]) * beta.at(&ix[2..])
    })
}

fn label_set(predicates: [bool; 7]) -> BTreeSet<ClassLabel> {
    let mut set: BTreeSet<ClassLabel> = ClassLabel::ALL[..7]
        .iter()
        .zip(predicates)
        .filter(|(_, holds)| *holds)
        .map(|(l, _)| *l)
        .collect();
    set.insert(ClassLabel::W1W2W3);
    set
}

/// Labels whose `Φ`-characterisation holds on every basis triple.
pub fn classify_phi(m: &WManifold, sp: &StructurePack) -> BTreeSet<ClassLabel> {
    let p = m.p();
    let phi = &sp.phi;
    let phi_pp = phi
        .compose(0, p)
        .and_then(|t| t.compose(1, p))
        .expect("(0,3) tensor");
    let inv_2n = Scalar::ratio(1, 2 * m.n() as i64);
    let w1_rhs = metric_times_forms(m.g(), &sp.f, m.g_twin(), &sp.f_star);
    let f_zero = sp.f.is_zero();
    let w0 = phi.is_zero();
    let w1 = *phi == w1_rhs.scale(&inv_2n);
    let w12 = *phi == phi_pp;
    let w2 = w12 && f_zero;
    let w3 = *phi == phi_pp.neg();
    let w13 = phi.add(&phi_pp).expect("same shape") == w1_rhs.scale(&(inv_2n.clone() + inv_2n));
    let w23 = f_zero;
    label_set([w0, w1, w2, w3, w12, w13, w23])
}

/// Labels whose `F`-characterisation holds on every basis triple.
pub fn classify_f(m: &WManifold, sp: &StructurePack) -> BTreeSet<ClassLabel> {
    let p = m.p();
    let f = &sp.f_tensor;
    let (theta, theta_star) = (&sp.theta, &sp.theta_star);
    let inv_2n = Scalar::ratio(1, 2 * m.n() as i64);
    let inv_n = inv_2n.clone() + &inv_2n;
    let cyclic = |t: &Tensor| {
        t.add(&t.permute(&[1, 2, 0]).unwrap())
            .and_then(|u| u.add(&t.permute(&[2, 0, 1]).unwrap()))
            .expect("same shape")
    };
    // g(x,y)θ(z) + g̃(x,y)θ*(z)
    let base = metric_times_forms(m.g(), theta, m.g_twin(), theta_star);
    let w1_rhs = base
        .add(&base.permute(&[0, 2, 1]).unwrap())
        .unwrap()
        .scale(&inv_2n);
    let theta_zero = theta.is_zero();
    let w0 = f.is_zero();
    let w1 = *f == w1_rhs;
    let w12 = cyclic(&f.compose(2, p).unwrap()).is_zero();
    let w2 = w12 && theta_zero;
    let w3 = cyclic(f).is_zero();
    let w13 = cyclic(f) == cyclic(&base).scale(&inv_n);
    let w23 = theta_zero;
    label_set([w0, w1, w2, w3, w12, w13, w23])
}

/// The unique least label of an upward-closed set.
pub fn minimal_class(satisfied: &BTreeSet<ClassLabel>) -> Result<ClassLabel> {
    if satisfied.is_empty() {
        return Err(Error::Lattice("empty label set".into()));
    }
    for &a in satisfied {
        for b in ClassLabel::ALL {
            if a.is_below(b) && !satisfied.contains(&b) {
                return Err(Error::Lattice(format!(
                    "not upward closed: {a} holds but {b} does not"
                )));
            }
        }
    }
    let minimal: Vec<ClassLabel> = satisfied
        .iter()
        .copied()
        .filter(|&a| satisfied.iter().all(|&b| a.is_below(b)))
        .collect();
    match minimal.as_slice() {
        [one] => Ok(*one),
        _ => Err(Error::Lattice(format!(
            "no least element in {{{}}}",
            satisfied
                .iter()
                .map(|l| l.name())
                .collect::<Vec<_>>()
                .join(", ")
        ))),
    }
}

/// Both classifications, their agreement, and the least satisfied label of
/// the `Φ`-based set.
pub fn classify(m: &WManifold, sp: &StructurePack) -> Result<ClassificationResult> {
    let satisfied = classify_phi(m, sp);
    let agreement = classify_f(m, sp) == satisfied;
    let minimal = minimal_class(&satisfied)?;
    Ok(ClassificationResult {
        satisfied,
        minimal,
        agreement,
    })
}

pub fn is_isotropic_w0(snorm: &Scalar) -> bool {
    snorm.is_zero()
}

/// `dα(X_i, X_j) = -α([X_i, X_j])` for an invariant 1-form `α`.
pub fn exterior_derivative(alg: &LieAlgebraModel, alpha: &Tensor) -> Tensor {
    let n = alg.dim();
    Tensor::from_fn(n, 0, 2, |ix| {
        -(0..n)
            .map(|k| alg.c(k, ix[0], ix[1]) * alpha.at(&[k]))
            .sum::<Scalar>()
    })
}

pub fn lee_forms_closed(alg: &LieAlgebraModel, theta: &Tensor, theta_star: &Tensor) -> bool {
    exterior_derivative(alg, theta).is_zero() && exterior_derivative(alg, theta_star).is_zero()
}

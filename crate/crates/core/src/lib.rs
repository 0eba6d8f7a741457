//! Exact tensor calculus on Lie algebras carrying an almost paracomplex
//! structure `P` and a compatible pseudo-Riemannian metric `g`.
//!
//! Everything is computed over the rationals. Starting from structure
//! constants, `P` and `g`, the crate derives the Levi-Civita connections of
//! `g` and of its twin `g̃(x, y) = g(x, Py)`, the structure tensors `F`, `Φ`,
//! the Lee forms, the class of the manifold, curvature, and the tensors
//! `D, Q, B, A, K` that behave simply under the interchange `g <-> g̃`.
//! Every identity between them is checked exactly.

pub mod algebra;
pub mod classification;
pub mod connection;
pub mod corpus;
pub mod curvature;
pub mod document;
pub mod error;
pub mod family;
pub mod linalg;
pub mod manifold;
pub mod parallel;
pub mod report;
pub mod scalar;
pub mod structure;
pub mod tensor;
pub mod twin;

pub use algebra::LieAlgebraModel;
pub use classification::{ClassLabel, ClassificationResult};
pub use connection::Connection;
pub use document::ManifoldDocument;
pub use error::{Error, Result};
pub use family::{build_family, FamilyParams};
pub use manifold::{build_manifold, WManifold};
pub use parallel::Execution;
pub use report::Report;
pub use scalar::Scalar;
pub use tensor::Tensor;
pub use twin::{analyze, invariance_suite, Analysis, Check, VerificationReport};

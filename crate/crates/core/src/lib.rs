//! Exact-arithmetic toolkit for finite-dimensional quiver algebras.
//!
//! The crate builds multiplication tables for admissible path-algebra
//! quotients, computes with their finite-dimensional modules (hom spaces,
//! decompositions, projective resolutions, translates), constructs and
//! verifies approximation sequences, derives tilting modules from them,
//! and compares derived-equivalence invariants of endomorphism algebras.

pub mod algebra;
pub mod approx;
pub mod decompose;
pub mod error;
pub mod field;
pub mod homology;
pub mod json;
pub mod matrix;
pub mod module;
pub mod quiver;
pub mod report;
pub mod tilting;

pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};

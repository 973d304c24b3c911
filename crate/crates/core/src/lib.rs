//! Exact computations with finite-dimensional Lie algebras over finite
//! fields, centred on non-singular derivations in positive characteristic.

pub mod deriv;
pub mod error;
pub mod field;
pub mod liealg;
pub mod linalg;
pub mod pcyclic;
pub mod pdecomp;
pub mod serial;
pub mod suites;
pub mod zoo;

pub use error::{Error, Result};
pub use field::{embed_scalar, make_field, Embedding, FieldSpec, FiniteField, Scalar};
pub use linalg::{Mat, Poly, Subspace, Vector};
pub use liealg::{gl_subalgebra_generated, semidirect_sum, LieAlg, Representation};

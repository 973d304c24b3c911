//! Dense exact linear algebra and univariate polynomials over a finite field.

mod factor;
mod krylov;
mod mat;
mod poly;
mod subspace;

pub use factor::{distinct_degree, equal_degree, squarefree_decomposition, DEFAULT_SEED};
pub use krylov::{
    cyclic_coordinates, cyclic_decomposition, cyclic_span, eigen_decomposition, krylov,
    maximal_vector, minpoly, mult_order, primary_subspace, relative_minpoly, MultOrder,
};
pub use mat::{Mat, Vector};
pub use poly::Poly;
pub use subspace::{unit, Subspace};

//! Primary decomposition V = ⊕ V_0(q_i(x)) of a space under one
//! endomorphism, collected along the distinct irreducible factors of the
//! minimal polynomial.

use crate::linalg::{minpoly, primary_subspace, Mat, Poly, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryComponent {
    /// Monic irreducible factor of the minimal polynomial.
    pub q: Poly,
    /// Exponent of q in the minimal polynomial.
    pub multiplicity: usize,
    pub space: Subspace,
}

/// Components ordered by the canonical order of their polynomials.
pub fn primary_decomposition(x: &Mat) -> Vec<PrimaryComponent> {
    assert!(x.is_square());
    if x.rows() == 0 {
        return Vec::new();
    }
    minpoly(x)
        .factor()
        .expect("minimal polynomial is non-zero")
        .into_iter()
        .map(|(q, multiplicity)| {
            let space = primary_subspace(x, &q).expect("irreducible factors are non-constant");
            PrimaryComponent { q, multiplicity, space }
        })
        .collect()
}

/// m·S ⊆ S
pub fn check_invariance(s: &Subspace, m: &Mat) -> bool {
    s.is_invariant(m)
}

/// Matrix of x|_S in the echelon basis of S, if S is x-invariant.
pub fn restriction(x: &Mat, s: &Subspace) -> Option<Mat> {
    s.restrict(x)
}

//! Derivations and compatible pairs as solution spaces of linear systems,
//! gradings, and the normalization of a non-singular derivation.

mod compat;
mod grading;
mod normalize;

pub use compat::{compatible_pair_space, verify_theorem_1_8, CompatPair, Thm18Report};
pub use grading::{derivation_from_grading, grading_from_derivation, graded_engel_check, EngelReport, Grading};
pub use normalize::{codim_one_abelian, normalize_derivation, splitting_degree, Normalized};

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::liealg::LieAlg;
use crate::linalg::{minpoly, mult_order, Mat, Vector};

/// A linear map δ of L with δ[u, v] = [δu, v] + [u, δv].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    matrix: Mat,
}

impl Derivation {
    pub fn new(l: &LieAlg, matrix: Mat) -> Result<Derivation> {
        if matrix.rows() != l.dim() || matrix.cols() != l.dim() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix on an algebra of dimension {}",
                matrix.rows(),
                matrix.cols(),
                l.dim()
            )));
        }
        if !is_derivation(l, &matrix) {
            return Err(Error::Hypothesis("map is not a derivation".into()));
        }
        Ok(Derivation { matrix })
    }

    pub(crate) fn unchecked(matrix: Mat) -> Derivation {
        Derivation { matrix }
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn into_matrix(self) -> Mat {
        self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        self.matrix.mul_vec(v)
    }

    pub fn is_nonsingular(&self) -> bool {
        is_nonsingular(&self.matrix)
    }
}

/// Exact Leibniz check on all basis pairs.
pub fn is_derivation(l: &LieAlg, m: &Mat) -> bool {
    let n = l.dim();
    if m.rows() != n || m.cols() != n {
        return false;
    }
    let f = l.field();
    let cols = m.col_vectors();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = m.mul_vec(&l.basis_bracket(i, j));
            let a = l.bracket(&cols[i], &crate::linalg::unit(n, j));
            let b = l.bracket(&crate::linalg::unit(n, i), &cols[j]);
            if lhs.iter().zip(a.iter().zip(&b)).any(|(&x, (&y, &z))| x != f.add(y, z)) {
                return false;
            }
        }
    }
    true
}

pub fn is_nonsingular(m: &Mat) -> bool {
    m.is_invertible()
}

/// Rows of the Leibniz system for an n×n unknown D stored row-major
/// (unknown r·n + s is D[r][s]), written into columns starting at `offset`
/// of a system with `width` unknowns.
pub(crate) fn leibniz_rows(l: &LieAlg, offset: usize, width: usize) -> Vec<Vector> {
    let n = l.dim();
    let f = l.field();
    let table: Vec<Vec<Vector>> = (0..n).map(|a| (0..n).map(|b| l.basis_bracket(a, b)).collect()).collect();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            // D[e_i, e_j] - [D e_i, e_j] - [e_i, D e_j] = 0, component r
            for r in 0..n {
                let mut row = vec![Scalar::ZERO; width];
                for s in 0..n {
                    let c = table[i][j][s];
                    if !c.is_zero() {
                        let k = offset + r * n + s;
                        row[k] = f.add(row[k], c);
                    }
                    let c = table[s][j][r];
                    if !c.is_zero() {
                        let k = offset + s * n + i;
                        row[k] = f.sub(row[k], c);
                    }
                    let c = table[i][s][r];
                    if !c.is_zero() {
                        let k = offset + s * n + j;
                        row[k] = f.sub(row[k], c);
                    }
                }
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

/// A basis of Der L.
pub fn derivation_space(l: &LieAlg) -> Vec<Derivation> {
    let n = l.dim();
    let f = l.field();
    let rows = leibniz_rows(l, 0, n * n);
    let basis: Vec<Vector> = if rows.is_empty() {
        crate::linalg::Subspace::full(f, n * n).basis().to_vec()
    } else {
        Mat::from_rows(f, &rows).expect("rectangular").kernel().basis().to_vec()
    };
    basis
        .into_iter()
        .map(|v| {
            Derivation::unchecked(Mat::from_rows(f, &v.chunks(n).map(<[Scalar]>::to_vec).collect::<Vec<_>>()).expect("square"))
        })
        .collect()
}

/// δ^p, which is again a derivation in characteristic p.
pub fn frobenius_power(l: &LieAlg, d: &Derivation) -> Result<Derivation> {
    let p = l.field().characteristic();
    let m = d.matrix.pow(p as u128);
    if !is_derivation(l, &m) {
        return Err(Error::Invariant("the p-th power of a derivation is not a derivation".into()));
    }
    Ok(Derivation::unchecked(m))
}

/// δ^{p^t} where |δ| = n·p^t with p ∤ n. The result has squarefree
/// minimal polynomial and is non-singular.
pub fn diagonalizable_power(l: &LieAlg, d: &Derivation) -> Result<(Derivation, u32)> {
    let order = mult_order(&d.matrix)?;
    let mut m = d.matrix.clone();
    for _ in 0..order.t {
        m = frobenius_power(l, &Derivation::unchecked(m))?.matrix;
    }
    let q = minpoly(&m);
    let sqfree = q.factor()?.iter().all(|(_, e)| *e == 1);
    if !sqfree || !m.is_invertible() {
        return Err(Error::Invariant(
            "power of a non-singular derivation is not semisimple and invertible".into(),
        ));
    }
    Ok((Derivation::unchecked(m), order.t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn abelian_and_heisenberg_dimensions() {
        let f = make_field(5, 1).unwrap();
        assert_eq!(derivation_space(&LieAlg::abelian(&f, 2)).len(), 4);
        let h = LieAlg::heisenberg(&f);
        let der = derivation_space(&h);
        assert_eq!(der.len(), 6);
        for d in &der {
            assert!(is_derivation(&h, d.matrix()));
        }
    }

    #[test]
    fn identity_on_heisenberg() {
        let f5 = make_field(5, 1).unwrap();
        assert!(!is_derivation(&LieAlg::heisenberg(&f5), &Mat::identity(&f5, 3)));
        // δz = z against [δx, y] + [x, δy] = 2z, which fails in every characteristic
        let f2 = make_field(2, 1).unwrap();
        assert!(!is_derivation(&LieAlg::heisenberg(&f2), &Mat::identity(&f2, 3)));
        let z = Mat::zeros(&f5, 3, 3);
        assert!(is_derivation(&LieAlg::heisenberg(&f5), &z));
        assert!(!is_nonsingular(&z));
    }

    #[test]
    fn powers() {
        let f2 = make_field(2, 1).unwrap();
        let a = LieAlg::abelian(&f2, 2);
        let d = Derivation::new(&a, Mat::from_ints(&f2, &[&[1, 1], &[0, 1]])).unwrap();
        let (s, t) = diagonalizable_power(&a, &d).unwrap();
        assert_eq!(t, 1);
        assert!(s.matrix().is_identity());
        let f3 = make_field(3, 1).unwrap();
        let a3 = LieAlg::abelian(&f3, 3);
        let j = Derivation::new(&a3, Mat::from_ints(&f3, &[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]])).unwrap();
        let (s, t) = diagonalizable_power(&a3, &j).unwrap();
        assert_eq!(t, 1);
        assert!(s.matrix().is_identity());
        let zero = Derivation::new(&a3, Mat::zeros(&f3, 3, 3)).unwrap();
        assert!(frobenius_power(&a3, &zero).unwrap().matrix().is_zero());
        assert_eq!(diagonalizable_power(&a3, &zero), Err(Error::Singular));
    }

    #[test]
    fn der_is_a_subalgebra() {
        let f = make_field(3, 1).unwrap();
        let h = LieAlg::heisenberg(&f);
        let der = derivation_space(&h);
        for a in &der {
            for b in &der {
                assert!(is_derivation(&h, &a.matrix().commutator(b.matrix())));
            }
        }
    }
}

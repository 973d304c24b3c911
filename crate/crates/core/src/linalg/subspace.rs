use super::mat::{rref_in_place, Mat, Vector};
use crate::field::{Embedding, FiniteField, Scalar};

/// Subspace of F^n stored as the rows of its reduced echelon basis.
///
/// Two subspaces are equal iff their stored bases are equal.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    field: FiniteField,
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &FiniteField, ambient: usize) -> Subspace {
        Subspace {
            field: field.clone(),
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &FiniteField, ambient: usize) -> Subspace {
        Mat::identity(field, ambient).image()
    }

    pub fn span(field: &FiniteField, ambient: usize, vectors: &[Vector]) -> Subspace {
        let mut rows: Vec<Vector> = vectors.to_vec();
        debug_assert!(rows.iter().all(|r| r.len() == ambient));
        let pivots = rref_in_place(field, &mut rows, ambient);
        Subspace {
            field: field.clone(),
            ambient,
            basis: rows,
            pivots,
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// v minus its projection along the basis rows; zero iff v ∈ self.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let f = &self.field;
        let mut w = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = w[pc];
            if c.is_zero() {
                continue;
            }
            for (a, &b) in w.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a = f.sub(*a, f.mul(c, b));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|c| c.is_zero())
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of v in the echelon basis, if v lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    /// Σ c_i b_i
    pub fn combine(&self, coords: &[Scalar]) -> Vector {
        let f = &self.field;
        let mut out = vec![Scalar::ZERO; self.ambient];
        for (row, &c) in self.basis.iter().zip(coords) {
            if c.is_zero() {
                continue;
            }
            for (a, &b) in out.iter_mut().zip(row) {
                *a = f.add(*a, f.mul(c, b));
            }
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::span(&self.field, self.ambient, &v)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(&self.field, self.ambient);
        }
        // (a, b) with Σ a_i s_i = Σ b_j o_j
        let f = &self.field;
        let (d1, d2) = (self.dim(), other.dim());
        let m = Mat::from_fn(f, self.ambient, d1 + d2, |r, c| {
            if c < d1 {
                self.basis[c][r]
            } else {
                f.neg(other.basis[c - d1][r])
            }
        });
        let vecs: Vec<Vector> = m
            .kernel()
            .basis()
            .iter()
            .map(|k| self.combine(&k[..d1]))
            .collect();
        Subspace::span(f, self.ambient, &vecs)
    }

    /// Indices of the standard basis vectors that are not pivots; their
    /// span is a complement of self.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    pub fn complement(&self) -> Subspace {
        let vecs: Vec<Vector> = self
            .complement_indices()
            .into_iter()
            .map(|i| unit(self.ambient, i))
            .collect();
        Subspace::span(&self.field, self.ambient, &vecs)
    }

    /// m·S
    pub fn image_under(&self, m: &Mat) -> Subspace {
        let vecs: Vec<Vector> = self.basis.iter().map(|b| m.mul_vec(b)).collect();
        Subspace::span(&self.field, m.rows(), &vecs)
    }

    pub fn is_invariant(&self, m: &Mat) -> bool {
        self.basis.iter().all(|b| self.contains(&m.mul_vec(b)))
    }

    /// Matrix of m|_S in the echelon basis. Requires m·S ⊆ S.
    pub fn restrict(&self, m: &Mat) -> Option<Mat> {
        let cols: Option<Vec<Vector>> = self
            .basis
            .iter()
            .map(|b| self.coordinates(&m.mul_vec(b)))
            .collect();
        Some(Mat::from_cols(&self.field, self.dim(), &cols?))
    }

    /// Matrix with the basis vectors as columns (an inclusion F^d → F^n).
    pub fn inclusion(&self) -> Mat {
        Mat::from_cols(&self.field, self.ambient, &self.basis)
    }

    pub fn embed(&self, e: &Embedding) -> Subspace {
        let vecs: Vec<Vector> = self
            .basis
            .iter()
            .map(|v| v.iter().map(|&c| e.apply(c)).collect())
            .collect();
        Subspace::span(e.target(), self.ambient, &vecs)
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in {})", self.dim(), self.ambient)?;
        for b in &self.basis {
            let row: Vec<String> = b.iter().map(|&c| self.field.fmt_scalar(c)).collect();
            write!(f, "\n  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = vec![Scalar::ZERO; n];
    v[i] = Scalar::ONE;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn span_is_canonical() {
        let f = make_field(5, 1).unwrap();
        let a = vec![f.from_int(1), f.from_int(2), f.from_int(0)];
        let b = vec![f.from_int(0), f.from_int(1), f.from_int(1)];
        let c = vec![f.from_int(1), f.from_int(3), f.from_int(1)];
        let s1 = Subspace::span(&f, 3, &[a.clone(), b.clone()]);
        let s2 = Subspace::span(&f, 3, &[c, b, a]);
        assert_eq!(s1, s2);
        assert_eq!(s1.dim(), 2);
        assert_eq!(s1.complement_indices(), vec![2]);
    }

    #[test]
    fn intersection_and_sum() {
        let f = make_field(3, 1).unwrap();
        let s = Subspace::span(&f, 3, &[unit(3, 0), unit(3, 1)]);
        let t = Subspace::span(&f, 3, &[unit(3, 1), unit(3, 2)]);
        assert_eq!(s.intersection(&t), Subspace::span(&f, 3, &[unit(3, 1)]));
        assert!(s.sum(&t).is_full());
        assert!(s.intersection(&Subspace::zero(&f, 3)).is_zero());
    }

    #[test]
    fn coordinates_roundtrip() {
        let f = make_field(7, 1).unwrap();
        let s = Subspace::span(
            &f,
            3,
            &[vec![f.from_int(1), f.from_int(1), f.from_int(0)], vec![f.from_int(0), f.from_int(2), f.from_int(3)]],
        );
        let v = s.combine(&[f.from_int(4), f.from_int(5)]);
        assert_eq!(s.combine(&s.coordinates(&v).unwrap()), v);
        assert!(s.coordinates(&unit(3, 2)).is_none());
    }
}

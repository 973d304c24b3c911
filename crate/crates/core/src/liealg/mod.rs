//! Lie algebras given by structure constants.

mod rep;
mod series;

pub use rep::{gl_subalgebra_generated, semidirect_sum, Representation};

use crate::error::{Error, Result};
use crate::field::{Embedding, FiniteField, Scalar};
use crate::linalg::{unit, Mat, Subspace, Vector};

/// A Lie algebra on the basis e_0, …, e_{n-1}.
///
/// Only the brackets [e_i, e_j] with i < j are stored; the rest follow
/// from antisymmetry and [e_i, e_i] = 0.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlg {
    field: FiniteField,
    dim: usize,
    sc: Vec<(usize, usize, Vector)>,
    labels: Option<Vec<String>>,
}

impl LieAlg {
    /// Builds and validates an algebra from its non-zero brackets
    /// [e_i, e_j], i < j.
    pub fn new(field: &FiniteField, dim: usize, sc: Vec<(usize, usize, Vector)>) -> Result<LieAlg> {
        let l = LieAlg::unchecked(field, dim, sc)?;
        l.validate()?;
        Ok(l)
    }

    /// Checks the shape of the table but not the Jacobi identity.
    pub fn unchecked(field: &FiniteField, dim: usize, sc: Vec<(usize, usize, Vector)>) -> Result<LieAlg> {
        let mut sc: Vec<_> = sc.into_iter().filter(|(_, _, v)| v.iter().any(|c| !c.is_zero())).collect();
        for (i, j, v) in &sc {
            if i >= j {
                return Err(Error::Malformed(format!("pair ({i}, {j}) must have i < j")));
            }
            if *j >= dim {
                return Err(Error::Malformed(format!("index {j} out of range for dimension {dim}")));
            }
            if v.len() != dim {
                return Err(Error::Malformed(format!("bracket ({i}, {j}) has {} coefficients", v.len())));
            }
        }
        sc.sort_by_key(|(i, j, _)| (*i, *j));
        if let Some(w) = sc.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(Error::Malformed(format!("pair ({}, {}) given twice", w[0].0, w[0].1)));
        }
        Ok(LieAlg {
            field: field.clone(),
            dim,
            sc,
            labels: None,
        })
    }

    /// Builds the table from a function giving [e_i, e_j] for i < j.
    pub fn from_fn(
        field: &FiniteField,
        dim: usize,
        mut f: impl FnMut(usize, usize) -> Vector,
    ) -> Result<LieAlg> {
        let mut sc = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                sc.push((i, j, f(i, j)));
            }
        }
        LieAlg::new(field, dim, sc)
    }

    pub fn abelian(field: &FiniteField, dim: usize) -> LieAlg {
        LieAlg::unchecked(field, dim, Vec::new()).expect("empty table")
    }

    /// [x, y] = z on the basis x, y, z.
    pub fn heisenberg(field: &FiniteField) -> LieAlg {
        LieAlg::new(field, 3, vec![(0, 1, unit(3, 2))])
            .expect("Heisenberg algebra")
            .with_labels(&["x", "y", "z"])
    }

    pub fn with_labels<S: AsRef<str>>(mut self, labels: &[S]) -> LieAlg {
        assert_eq!(labels.len(), self.dim);
        self.labels = Some(labels.iter().map(|s| s.as_ref().to_string()).collect());
        self
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("e{i}"),
        }
    }

    /// The non-zero brackets [e_i, e_j], i < j, sorted by (i, j).
    pub fn structure_constants(&self) -> &[(usize, usize, Vector)] {
        &self.sc
    }

    pub fn is_abelian(&self) -> bool {
        self.sc.is_empty()
    }

    pub fn zero_vector(&self) -> Vector {
        vec![Scalar::ZERO; self.dim]
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> Vector {
        let (a, b, sign) = if i < j { (i, j, false) } else { (j, i, true) };
        match self.sc.binary_search_by_key(&(a, b), |(x, y, _)| (*x, *y)) {
            Ok(k) if i != j => {
                let v = &self.sc[k].2;
                if sign {
                    v.iter().map(|&c| self.field.neg(c)).collect()
                } else {
                    v.clone()
                }
            }
            _ => self.zero_vector(),
        }
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        assert!(u.len() == self.dim && v.len() == self.dim, "bracket: dimension mismatch");
        let f = &self.field;
        let mut out = self.zero_vector();
        for (i, j, c) in &self.sc {
            let coef = f.sub(f.mul(u[*i], v[*j]), f.mul(u[*j], v[*i]));
            if coef.is_zero() {
                continue;
            }
            for (a, &b) in out.iter_mut().zip(c) {
                if !b.is_zero() {
                    *a = f.add(*a, f.mul(coef, b));
                }
            }
        }
        out
    }

    /// [x^n, v] = [x, [x, … [x, v]]]
    pub fn bracket_pow(&self, x: &[Scalar], n: usize, v: &[Scalar]) -> Vector {
        let mut w = v.to_vec();
        for _ in 0..n {
            w = self.bracket(x, &w);
        }
        w
    }

    /// Matrix of ad x: column j is [x, e_j].
    pub fn ad(&self, x: &[Scalar]) -> Mat {
        assert_eq!(x.len(), self.dim);
        let f = &self.field;
        let mut m = Mat::zeros(f, self.dim, self.dim);
        for (i, j, c) in &self.sc {
            // [x, e_j] picks up x_i [e_i, e_j]; [x, e_i] picks up -x_j [e_i, e_j]
            for (r, &cr) in c.iter().enumerate() {
                if cr.is_zero() {
                    continue;
                }
                if !x[*i].is_zero() {
                    m.set(r, *j, f.add(m.get(r, *j), f.mul(x[*i], cr)));
                }
                if !x[*j].is_zero() {
                    m.set(r, *i, f.sub(m.get(r, *i), f.mul(x[*j], cr)));
                }
            }
        }
        m
    }

    pub fn ad_basis(&self, i: usize) -> Mat {
        self.ad(&unit(self.dim, i))
    }

    /// Checks the Jacobi identity on all basis triples i < j < k.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        let ads: Vec<Mat> = (0..n).map(|i| self.ad_basis(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let eij = self.basis_bracket(i, j);
                // [e_i, [e_j, e_k]] + [e_j, [e_k, e_i]] + [e_k, [e_i, e_j]]
                // = ([ad e_i, ad e_j] - ad [e_i, e_j]) e_k
                let jac = ads[i].commutator(&ads[j]).sub(&self.ad(&eij));
                for k in j + 1..n {
                    if (0..n).any(|r| !jac.get(r, k).is_zero()) {
                        return Err(Error::Jacobi(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// span{[a, b] : a ∈ A, b ∈ B}
    pub fn bracket_spaces(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vecs = Vec::new();
        for u in a.basis() {
            for v in b.basis() {
                vecs.push(self.bracket(u, v));
            }
        }
        Subspace::span(&self.field, self.dim, &vecs)
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(&self.field, self.dim)
    }

    pub fn derived_algebra(&self) -> Subspace {
        let l = self.full_space();
        self.bracket_spaces(&l, &l)
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        self.bracket_spaces(s, s).basis().iter().all(|v| s.contains(v))
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.basis()
            .iter()
            .all(|v| (0..self.dim).all(|i| s.contains(&self.bracket(&unit(self.dim, i), v))))
    }

    pub fn center(&self) -> Subspace {
        // x central iff ad(e_i) x = 0 for all i
        let n = self.dim;
        let mut rows = Vec::new();
        for i in 0..n {
            rows.extend(self.ad_basis(i).row_vectors());
        }
        if rows.is_empty() {
            return self.full_space();
        }
        Mat::from_rows(&self.field, &rows).expect("rectangular").kernel()
    }

    /// L/S on the basis of standard vectors e_c, c not a pivot of S, with
    /// the projection L → L/S as a matrix.
    pub fn quotient(&self, s: &Subspace) -> Result<(LieAlg, Mat)> {
        if s.ambient() != self.dim {
            return Err(Error::Dimension("ideal lives in a different space".into()));
        }
        if !self.is_ideal(s) {
            return Err(Error::NotAnIdeal);
        }
        let comp = s.complement_indices();
        let m = comp.len();
        let project = |v: &[Scalar]| -> Vector {
            let r = s.reduce(v);
            comp.iter().map(|&c| r[c]).collect()
        };
        let proj = Mat::from_cols(
            &self.field,
            m,
            &(0..self.dim).map(|j| project(&unit(self.dim, j))).collect::<Vec<_>>(),
        );
        let mut sc = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                sc.push((a, b, project(&self.basis_bracket(comp[a], comp[b]))));
            }
        }
        let mut q = LieAlg::unchecked(&self.field, m, sc)?;
        if let Some(l) = &self.labels {
            q.labels = Some(comp.iter().map(|&c| l[c].clone()).collect());
        }
        Ok((q, proj))
    }

    /// Abstract algebra on the given basis of a subalgebra.
    pub fn subalgebra(&self, s: &Subspace) -> Result<LieAlg> {
        if !self.is_subalgebra(s) {
            return Err(Error::Hypothesis("subspace is not a subalgebra".into()));
        }
        let d = s.dim();
        let mut sc = Vec::new();
        for a in 0..d {
            for b in a + 1..d {
                let v = self.bracket(&s.basis()[a], &s.basis()[b]);
                sc.push((a, b, s.coordinates(&v).expect("closed under brackets")));
            }
        }
        LieAlg::unchecked(&self.field, d, sc)
    }

    /// The same structure constants read in an extension field.
    pub fn extend_scalars(&self, target: &FiniteField) -> Result<LieAlg> {
        let e = Embedding::new(&self.field, target)?;
        let sc = self
            .sc
            .iter()
            .map(|(i, j, v)| (*i, *j, v.iter().map(|&c| e.apply(c)).collect()))
            .collect();
        let mut l = LieAlg::unchecked(target, self.dim, sc)?;
        l.labels = self.labels.clone();
        Ok(l)
    }
}

impl std::fmt::Debug for LieAlg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieAlg(dim {} over {:?})", self.dim, self.field)?;
        for (i, j, v) in &self.sc {
            let terms: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(r, &c)| {
                    if c == Scalar::ONE {
                        self.label(r)
                    } else {
                        format!("{}*{}", self.field.fmt_scalar(c), self.label(r))
                    }
                })
                .collect();
            write!(f, "\n  [{}, {}] = {}", self.label(*i), self.label(*j), terms.join(" + "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn jacobi_violation_is_reported() {
        let f = make_field(5, 1).unwrap();
        let r = LieAlg::new(&f, 3, vec![(0, 1, unit(3, 0)), (1, 2, unit(3, 0)), (0, 2, unit(3, 1))]);
        assert_eq!(r, Err(Error::Jacobi(0, 1, 2)));
        assert!(LieAlg::abelian(&f, 3).validate().is_ok());
        assert!(LieAlg::heisenberg(&f).validate().is_ok());
    }

    #[test]
    fn malformed_tables() {
        let f = make_field(3, 1).unwrap();
        assert!(matches!(LieAlg::new(&f, 2, vec![(1, 0, unit(2, 0))]), Err(Error::Malformed(_))));
        assert!(matches!(LieAlg::new(&f, 2, vec![(0, 2, unit(2, 0))]), Err(Error::Malformed(_))));
        assert!(matches!(
            LieAlg::new(&f, 2, vec![(0, 1, unit(2, 0)), (0, 1, unit(2, 0))]),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn heisenberg_brackets() {
        let f = make_field(7, 1).unwrap();
        let h = LieAlg::heisenberg(&f);
        let (x, y, z) = (unit(3, 0), unit(3, 1), unit(3, 2));
        assert_eq!(h.bracket(&x, &y), z);
        assert_eq!(h.bracket(&y, &x), vec![Scalar::ZERO, Scalar::ZERO, f.from_int(-1)]);
        assert!(h.bracket(&x, &x).iter().all(|c| c.is_zero()));
        assert_eq!(h.center(), Subspace::span(&f, 3, &[z.clone()]));
        let (q, proj) = h.quotient(&Subspace::span(&f, 3, &[z])).unwrap();
        assert!(q.is_abelian() && q.dim() == 2);
        assert_eq!(proj.rows(), 2);
        assert_eq!(h.quotient(&Subspace::span(&f, 3, &[x])), Err(Error::NotAnIdeal));
    }

    #[test]
    fn char_two_alternating() {
        let f = make_field(2, 1).unwrap();
        let h = LieAlg::heisenberg(&f);
        let u = vec![Scalar::ONE, Scalar::ONE, Scalar::ZERO];
        assert!(h.bracket(&u, &u).iter().all(|c| c.is_zero()));
    }
}

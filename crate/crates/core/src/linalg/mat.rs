use std::fmt;

use rand::Rng;

use super::{Poly, Subspace};
use crate::error::{Error, Result};
use crate::field::{Embedding, FiniteField, Scalar};

pub type Vector = Vec<Scalar>;

/// Dense row-major matrix over a finite field.
///
/// Shape mismatches in arithmetic are programming errors and panic.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: FiniteField,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(field: &FiniteField, rows: usize, cols: usize) -> Mat {
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: vec![Scalar::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &FiniteField, n: usize) -> Mat {
        Mat::scalar(field, n, Scalar::ONE)
    }

    pub fn scalar(field: &FiniteField, n: usize, c: Scalar) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn diag(field: &FiniteField, d: &[Scalar]) -> Mat {
        let mut m = Mat::zeros(field, d.len(), d.len());
        for (i, &c) in d.iter().enumerate() {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_fn(
        field: &FiniteField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: &FiniteField, rows: &[Vector]) -> Result<Mat> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Mat {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_cols(field: &FiniteField, rows: usize, cols: &[Vector]) -> Mat {
        Mat::from_fn(field, rows, cols.len(), |r, c| cols[c][r])
    }

    pub fn from_ints(field: &FiniteField, rows: &[&[i64]]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        Mat::from_fn(field, rows.len(), cols, |r, c| field.from_int(rows[r][c]))
    }

    pub fn random<R: Rng + ?Sized>(field: &FiniteField, rows: usize, cols: usize, rng: &mut R) -> Mat {
        Mat::from_fn(field, rows, cols, |_, _| field.random(rng))
    }

    /// Companion matrix of a monic f: e_i -> e_{i+1}, e_{n-1} -> -Σ f_i e_i.
    pub fn companion(f: &Poly) -> Mat {
        let field = f.field();
        let n = f.degree().expect("non-zero polynomial");
        let f = f.monic();
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            if i + 1 < n {
                m.set(i + 1, i, Scalar::ONE);
            }
            m.set(i, n - 1, field.neg(f.coeff(i)));
        }
        m
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col_vectors(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(&self.field, self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Mat::identity(&self.field, self.rows)
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        Mat {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        Mat {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: Scalar) -> Mat {
        let f = &self.field;
        Mat {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn neg(&self) -> Mat {
        self.scale(self.field.neg(Scalar::ONE))
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let orow = other.row(k);
                let base = i * other.cols;
                for (j, &b) in orow.iter().enumerate() {
                    if !b.is_zero() {
                        out.data[base + j] = f.add(out.data[base + j], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(Scalar::ZERO, |acc, (&a, &b)| {
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        f.add(acc, f.mul(a, b))
                    }
                })
            })
            .collect()
    }

    /// [a, b] = ab - ba
    pub fn commutator(&self, other: &Mat) -> Mat {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, mut e: u128) -> Mat {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Mat::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// f(self) by Horner's rule.
    pub fn eval_poly(&self, f: &Poly) -> Mat {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = Mat::zeros(&self.field, n, n);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let v = self.field.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// f(self)·v without forming f(self).
    pub fn apply_poly(&self, f: &Poly, v: &[Scalar]) -> Vector {
        let fld = &self.field;
        let mut acc = vec![Scalar::ZERO; v.len()];
        for &c in f.coeffs().iter().rev() {
            acc = self.mul_vec(&acc);
            for (a, &b) in acc.iter_mut().zip(v) {
                *a = fld.add(*a, fld.mul(c, b));
            }
        }
        acc
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut rows = self.row_vectors();
        let pivots = rref_in_place(&self.field, &mut rows, self.cols);
        let m = Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: {
                let mut d = rows.concat();
                d.resize(self.rows * self.cols, Scalar::ZERO);
                d
            },
        };
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// {v : Mv = 0}
    pub fn kernel(&self) -> Subspace {
        let mut rows = self.row_vectors();
        let pivots = rref_in_place(&self.field, &mut rows, self.cols);
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let basis: Vec<Vector> = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Scalar::ZERO; self.cols];
                v[free] = Scalar::ONE;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(rows[i][free]);
                }
                v
            })
            .collect();
        Subspace::span(f, self.cols, &basis)
    }

    pub fn image(&self) -> Subspace {
        Subspace::span(&self.field, self.rows, &self.col_vectors())
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let f = &self.field;
        let mut rows: Vec<Vector> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| if c == r { Scalar::ONE } else { Scalar::ZERO }));
                row
            })
            .collect();
        let pivots = rref_in_place(f, &mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        Ok(Mat::from_fn(f, n, n, |r, c| rows[r][n + c]))
    }

    /// Some x with self·x = b, if one exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let f = &self.field;
        let mut rows: Vec<Vector> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(b[r]);
                row
            })
            .collect();
        let pivots = rref_in_place(f, &mut rows, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::ZERO; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = rows[i][self.cols];
        }
        Some(x)
    }

    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square());
        self.pow(self.rows as u128).is_zero()
    }

    pub fn block_diag(field: &FiniteField, blocks: &[Mat]) -> Mat {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(field, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.set(r0 + r, c0 + c, b.get(r, c));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Mat {
        Mat::from_fn(&self.field, rows.len(), cols.len(), |r, c| {
            self.get(rows.start + r, cols.start + c)
        })
    }

    /// Entrywise image under a field embedding.
    pub fn embed(&self, e: &Embedding) -> Mat {
        Mat {
            field: e.target().clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| e.apply(a)).collect(),
        }
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|&c| self.field.fmt_scalar(c)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Gauss–Jordan elimination on the first `ncols` columns. Pivots are taken
/// leftmost, using the first row with a non-zero entry. Zero rows are
/// dropped; the returned pivot list is strictly increasing and `rows` ends
/// up holding exactly one row per pivot.
pub(crate) fn rref_in_place(field: &FiniteField, rows: &mut Vec<Vector>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = field.inv(rows[r][c]);
        if inv != Scalar::ONE {
            for a in rows[r].iter_mut() {
                *a = field.mul(*a, inv);
            }
        }
        let pivot_row = std::mem::take(&mut rows[r]);
        let nz: Vec<usize> = (c..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let factor = row[c];
            if factor.is_zero() {
                continue;
            }
            for &j in &nz {
                row[j] = field.sub(row[j], field.mul(factor, pivot_row[j]));
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

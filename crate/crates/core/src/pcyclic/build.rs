use crate::deriv::{derivation_from_grading, Derivation, Grading};
use crate::error::{Error, Result};
use crate::field::{FiniteField, Scalar};
use crate::liealg::{semidirect_sum, LieAlg, Representation};
use crate::linalg::{unit, Mat, Poly, Vector};

/// ⟨x⟩ ⋉ (I_1 ⊕ … ⊕ I_s) with its grading derivation.
#[derive(Clone, Debug)]
pub struct Built {
    pub algebra: LieAlg,
    pub x: Vector,
    pub delta: Derivation,
    pub b: Scalar,
    pub a: Vec<Scalar>,
    /// Degree of each basis vector of L.
    pub degrees: Vec<Scalar>,
}

/// b outside F_p and a_1, …, a_s with a_j/b ∉ F_p and the cosets
/// a_j + F_p·b pairwise distinct.
pub fn choose_degrees(s: usize, f: &FiniteField) -> Result<(Scalar, Vec<Scalar>)> {
    let b = f
        .element_outside_prime_field()
        .map_err(|_| Error::FieldTooSmall(format!("no element outside F_{}", f.characteristic())))?;
    let binv = f.inv(b);
    let mut a: Vec<Scalar> = Vec::with_capacity(s);
    for c in f.elements() {
        if a.len() == s {
            break;
        }
        if f.in_prime_field(f.mul(c, binv)) {
            continue;
        }
        if a.iter().any(|&prev| f.in_prime_field(f.mul(f.sub(c, prev), binv))) {
            continue;
        }
        a.push(c);
    }
    if a.len() < s {
        return Err(Error::FieldTooSmall(format!(
            "GF({}) has room for {} summands, {s} requested",
            f.order(),
            a.len()
        )));
    }
    Ok((b, a))
}

/// Builds L = ⟨x⟩ ⋉ ⊕ I_j where x acts on I_j by the companion matrix of
/// the j-th (x,p)-minimal polynomial, graded by deg x = b and
/// deg v_i^j = a_j + i·b.
pub fn build_derivation(minpolys: &[Poly], f: &FiniteField) -> Result<Built> {
    let p = f.characteristic() as usize;
    for q in minpolys {
        if q.field() != f {
            return Err(Error::FieldMismatch);
        }
        let ok = q.is_monic() && q.degree().is_some_and(|d| d >= p) && q.is_in_t_pow_p() && !q.coeff(0).is_zero();
        if !ok {
            return Err(Error::Hypothesis(format!("{q} is not an (x,p)-minimal polynomial")));
        }
    }
    let (b, a) = choose_degrees(minpolys.len(), f)?;
    let blocks: Vec<Mat> = minpolys.iter().map(Mat::companion).collect();
    let x_on_i = Mat::block_diag(f, &blocks);
    let m = x_on_i.rows();
    let k = LieAlg::abelian(f, 1).with_labels(&["x"]);
    let labels: Vec<String> = minpolys
        .iter()
        .enumerate()
        .flat_map(|(j, q)| (0..q.degree().unwrap()).map(move |i| format!("v{}_{}", j + 1, i)))
        .collect();
    let ideal = LieAlg::abelian(f, m).with_labels(&labels);
    let rep = Representation::new(k, m, vec![x_on_i])?;
    let algebra = semidirect_sum(&rep, &ideal)?;
    let mut degrees = vec![b];
    for (j, q) in minpolys.iter().enumerate() {
        for i in 0..q.degree().unwrap() {
            degrees.push(f.add(a[j], f.mul(f.from_int(i as i64), b)));
        }
    }
    let grading = Grading::from_basis_degrees(&algebra, &degrees)
        .map_err(|e| Error::Invariant(format!("constructed degrees do not grade L: {e}")))?;
    let delta = derivation_from_grading(&algebra, &grading)?;
    let mut distinct = degrees.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if !delta.is_nonsingular() || distinct.len() != minpolys.len() * p + 1 {
        return Err(Error::Invariant(format!(
            "derivation has {} distinct eigenvalues, expected {}",
            distinct.len(),
            minpolys.len() * p + 1
        )));
    }
    Ok(Built {
        x: unit(algebra.dim(), 0),
        algebra,
        delta,
        b,
        a,
        degrees,
    })
}

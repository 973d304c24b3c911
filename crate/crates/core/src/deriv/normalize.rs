use super::{diagonalizable_power, is_derivation, Derivation};
use crate::error::{Error, Result};
use crate::field::{make_field, Embedding, FiniteField, Scalar};
use crate::liealg::LieAlg;
use crate::linalg::{minpoly, Mat, Subspace, Vector};

/// A derivation with δ(x) = x, δ(L') = L' and δ|_{L'} diagonalizable,
/// together with the algebra read over the field where it splits.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub field: FiniteField,
    pub algebra: LieAlg,
    pub x: Vector,
    pub delta: Derivation,
    /// The exponent with δ'' = δ'^{p^t}.
    pub t: u32,
}

/// Checks dim L/L' = 1, L' abelian and x ∉ L', returning L'.
pub fn codim_one_abelian(l: &LieAlg, x: &[Scalar]) -> Result<Subspace> {
    let ld = l.derived_algebra();
    if l.dim() - ld.dim() != 1 {
        return Err(Error::Hypothesis(format!("dim L/L' = {}, expected 1", l.dim() - ld.dim())));
    }
    if !l.bracket_spaces(&ld, &ld).is_zero() {
        return Err(Error::Hypothesis("L' is not abelian".into()));
    }
    if ld.contains(x) {
        return Err(Error::Hypothesis("x lies in L'".into()));
    }
    Ok(ld)
}

/// Follows the reduction in three steps: drop the L'-component of d(x),
/// pass to the semisimple power δ'^{p^t}, then scale so that δ(x) = x.
pub fn normalize_derivation(l: &LieAlg, x: &[Scalar], d: &Derivation) -> Result<Normalized> {
    let f = l.field();
    let n = l.dim();
    if d.matrix().rows() != n || !is_derivation(l, d.matrix()) {
        return Err(Error::Hypothesis("map is not a derivation of L".into()));
    }
    if !d.is_nonsingular() {
        return Err(Error::Hypothesis("derivation is singular".into()));
    }
    let ld = codim_one_abelian(l, x)?;
    // φ(v) = coefficient of x in v modulo L'
    let c0 = ld.complement_indices()[0];
    let xr = ld.reduce(x)[c0];
    let phi: Vector = (0..n)
        .map(|j| {
            let mut e = vec![Scalar::ZERO; n];
            e[j] = Scalar::ONE;
            f.div(ld.reduce(&e)[c0], xr)
        })
        .collect();
    let dx = d.apply(x);
    let alpha = f.div(ld.reduce(&dx)[c0], xr);
    let a: Vector = dx.iter().zip(x).map(|(&u, &v)| f.sub(u, f.mul(alpha, v))).collect();
    let correction = Mat::from_fn(f, n, n, |r, c| f.mul(a[r], phi[c]));
    let d1 = d.matrix().sub(&correction);
    if !is_derivation(l, &d1) {
        return Err(Error::Invariant("delta' fails the Leibniz rule".into()));
    }
    let (d2, t) = diagonalizable_power(l, &Derivation::unchecked(d1))?;
    let ax = f.pow(alpha, (f.characteristic() as u128).pow(t));
    let delta = d2.matrix().scale(f.inv(ax));
    if delta.mul_vec(x) != x || !delta.is_invertible() || !is_derivation(l, &delta) {
        return Err(Error::Invariant("normalized derivation lost delta(x) = x".into()));
    }
    let restricted = ld.restrict(&delta).ok_or_else(|| Error::Invariant("L' is not delta-invariant".into()))?;
    let m = splitting_degree(&[minpoly(&restricted)])?;
    let target = if m == 1 {
        f.clone()
    } else {
        make_field(f.characteristic(), f.degree() * m)?
    };
    let e = Embedding::new(f, &target)?;
    Ok(Normalized {
        algebra: l.extend_scalars(&target)?,
        x: x.iter().map(|&c| e.apply(c)).collect(),
        delta: Derivation::unchecked(delta.embed(&e)),
        field: target,
        t,
    })
}

/// Least m such that every given polynomial splits over GF(q^m).
pub fn splitting_degree(polys: &[crate::linalg::Poly]) -> Result<usize> {
    let mut m = 1usize;
    for q in polys {
        for (g, _) in q.factor()? {
            let d = g.degree().unwrap();
            m = m / gcd(m, d) * d;
        }
    }
    Ok(m)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

//! (x,p)-cyclic modules: the predicate, summands generated by a
//! δ-eigenvector, the recursive decomposition of a metabelian L' under a
//! non-singular derivation, and the inverse construction.

mod build;
mod decompose;

pub use build::{build_derivation, choose_degrees, Built};
pub use decompose::{xp_decompose, xp_decompose_primary, EigenCosetBlock, XpDecomposition};

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{krylov, Mat, Poly, Subspace, Vector};

/// One (x,p)-cyclic summand ⟨v⟩ of dimension r·p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PCyclicSummand {
    pub generator: Vector,
    pub r: usize,
    /// Relative minimal polynomial of the generator, in F[t^p].
    pub minpoly: Poly,
    /// δ-eigenvalue of the generator, when known.
    pub eigenvalue: Option<Scalar>,
}

impl PCyclicSummand {
    pub fn dim(&self) -> usize {
        self.minpoly.degree().unwrap_or(0)
    }

    pub fn span(&self, x: &Mat) -> Subspace {
        crate::linalg::cyclic_span(x, &self.generator)
    }
}

/// Whether V is x-cyclic with minimal polynomial in F[t^p] and non-zero
/// constant term; the string says which condition failed.
pub fn is_xp_cyclic(x: &Mat, v: &Subspace) -> (bool, String) {
    let Some(xr) = v.restrict(x) else {
        return (false, "subspace is not x-invariant".into());
    };
    let q = crate::linalg::minpoly(&xr);
    if q.degree() != Some(v.dim()) {
        return (false, format!("minimal polynomial has degree {} < dim {}", q.degree().unwrap_or(0), v.dim()));
    }
    if !q.is_in_t_pow_p() {
        return (false, format!("minimal polynomial {q} is not a polynomial in t^p"));
    }
    if q.coeff(0).is_zero() {
        return (false, "minimal polynomial vanishes at 0".into());
    }
    (true, format!("minimal polynomial {q}"))
}

/// The summand ⟨v, xv, …⟩ for a δ-eigenvector v, where δx − xδ = x.
pub fn cyclic_from_eigenvector(x: &Mat, delta: &Mat, v: &[Scalar]) -> Result<PCyclicSummand> {
    let f = x.field();
    let n = x.rows();
    if !x.is_square() || delta.rows() != n || delta.cols() != n || v.len() != n {
        return Err(Error::Dimension("x, delta and v disagree in size".into()));
    }
    if !x.is_invertible() {
        return Err(Error::Singular);
    }
    if v.iter().all(|c| c.is_zero()) {
        return Err(Error::Hypothesis("v is zero".into()));
    }
    let dv = delta.mul_vec(v);
    let i0 = v.iter().position(|c| !c.is_zero()).unwrap();
    let a = f.div(dv[i0], v[i0]);
    if dv.iter().zip(v).any(|(&u, &w)| u != f.mul(a, w)) {
        return Err(Error::Hypothesis("v is not a delta-eigenvector".into()));
    }
    let (seq, q) = krylov(x, v);
    // x v_i is an eigenvector for a + i + 1
    let mut ai = a;
    for w in &seq {
        let dw = delta.mul_vec(w);
        if dw.iter().zip(w).any(|(&u, &c)| u != f.mul(ai, c)) {
            return Err(Error::Invariant("x^i v is not an eigenvector for a + i".into()));
        }
        ai = f.add(ai, Scalar::ONE);
    }
    let p = f.characteristic() as usize;
    let k = seq.len();
    if k % p != 0 || !q.is_in_t_pow_p() || q.coeff(0).is_zero() {
        return Err(Error::Invariant(format!("cyclic span has minimal polynomial {q}, not (x,p)-cyclic")));
    }
    Ok(PCyclicSummand {
        generator: v.to_vec(),
        r: k / p,
        minpoly: q,
        eigenvalue: Some(a),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::linalg::unit;

    #[test]
    fn predicate() {
        let f = make_field(3, 1).unwrap();
        let shift = Mat::companion(&Poly::from_ints(&f, &[-1, 0, 0, 1]));
        assert!(is_xp_cyclic(&shift, &Subspace::full(&f, 3)).0);
        let id = Mat::identity(&f, 1);
        assert!(!is_xp_cyclic(&id, &Subspace::full(&f, 1)).0);
        // t^6 − t^3 − 2
        let c = Mat::companion(&Poly::from_ints(&f, &[-2, 0, 0, -1, 0, 0, 1]));
        assert!(is_xp_cyclic(&c, &Subspace::full(&f, 6)).0);
        // t^3 is in F[t^3] but vanishes at 0
        let nil = Mat::companion(&Poly::from_ints(&f, &[0, 0, 0, 1]));
        let (ok, why) = is_xp_cyclic(&nil, &Subspace::full(&f, 3));
        assert!(!ok && why.contains("vanishes"));
        let two = Mat::block_diag(&f, &[shift.clone(), shift]);
        assert!(!is_xp_cyclic(&two, &Subspace::full(&f, 6)).0);
    }

    #[test]
    fn eigenvector_orbit() {
        let f = make_field(5, 2).unwrap();
        let w = f.element_outside_prime_field().unwrap();
        let shift = Mat::companion(&Poly::from_ints(&f, &[-1, 0, 0, 0, 0, 1]));
        let delta = Mat::diag(&f, &(0..5).map(|i| f.add(w, f.from_int(i))).collect::<Vec<_>>());
        let s = cyclic_from_eigenvector(&shift, &delta, &unit(5, 0)).unwrap();
        assert_eq!((s.r, s.dim(), s.eigenvalue), (1, 5, Some(w)));
        assert_eq!(s.minpoly, Poly::from_ints(&f, &[-1, 0, 0, 0, 0, 1]));
        assert!(cyclic_from_eigenvector(&shift, &delta, &[Scalar::ZERO; 5]).is_err());
        let mut mixed = unit(5, 0);
        mixed[1] = Scalar::ONE;
        assert!(cyclic_from_eigenvector(&shift, &delta, &mixed).is_err());
        // a scalar δ breaks δx − xδ = x
        let bad = Mat::identity(&f, 5);
        assert!(matches!(cyclic_from_eigenvector(&shift, &bad, &unit(5, 0)), Err(Error::Invariant(_))));
    }
}

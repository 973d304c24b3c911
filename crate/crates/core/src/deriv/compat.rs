use super::{is_derivation, leibniz_rows};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::liealg::Representation;
use crate::linalg::{Mat, Subspace, Vector};

/// (α, β) ∈ Der K × gl(I) with [β, ψ(k)] = ψ(α k) for all k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatPair {
    pub alpha: Mat,
    pub beta: Mat,
}

impl CompatPair {
    /// (k, v) ↦ (α k, β v) on K ⋉ I.
    pub fn as_derivation(&self) -> Mat {
        Mat::block_diag(self.alpha.field(), &[self.alpha.clone(), self.beta.clone()])
    }

    pub fn is_compatible(&self, rep: &Representation) -> bool {
        let k = rep.algebra();
        if !is_derivation(k, &self.alpha) {
            return false;
        }
        (0..k.dim()).all(|a| {
            self.beta.commutator(&rep.matrices()[a]) == rep.act(&self.alpha.col(a))
        })
    }

    /// (α^p, β^p), again a compatible pair.
    pub fn frobenius_power(&self, rep: &Representation) -> Result<CompatPair> {
        let p = self.alpha.field().characteristic() as u128;
        let out = CompatPair {
            alpha: self.alpha.pow(p),
            beta: self.beta.pow(p),
        };
        if !out.is_compatible(rep) {
            return Err(Error::Invariant("p-th power of a compatible pair is not compatible".into()));
        }
        Ok(out)
    }
}

/// A basis of the compatible pairs for ψ: K → gl(I), I abelian.
pub fn compatible_pair_space(rep: &Representation) -> Vec<CompatPair> {
    let k = rep.algebra();
    let f = k.field();
    let (dk, m) = (k.dim(), rep.module_dim());
    let width = dk * dk + m * m;
    let off = dk * dk;
    let mut rows = leibniz_rows(k, 0, width);
    let psi = rep.matrices();
    for a in 0..dk {
        let pa = &psi[a];
        for r in 0..m {
            for c in 0..m {
                // (β ψ_a − ψ_a β − Σ_s α[s][a] ψ_s)[r][c] = 0
                let mut row = vec![Scalar::ZERO; width];
                for u in 0..m {
                    let x = pa.get(u, c);
                    if !x.is_zero() {
                        let i = off + r * m + u;
                        row[i] = f.add(row[i], x);
                    }
                    let y = pa.get(r, u);
                    if !y.is_zero() {
                        let i = off + u * m + c;
                        row[i] = f.sub(row[i], y);
                    }
                }
                for (s, ps) in psi.iter().enumerate() {
                    let z = ps.get(r, c);
                    if !z.is_zero() {
                        let i = s * dk + a;
                        row[i] = f.sub(row[i], z);
                    }
                }
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let sols: Vec<Vector> = if rows.is_empty() {
        Subspace::full(f, width).basis().to_vec()
    } else {
        Mat::from_rows(f, &rows).expect("rectangular").kernel().basis().to_vec()
    };
    sols.into_iter()
        .map(|v| CompatPair {
            alpha: Mat::from_fn(f, dk, dk, |r, c| v[r * dk + c]),
            beta: Mat::from_fn(f, m, m, |r, c| v[off + r * m + c]),
        })
        .collect()
}

/// Outcome of checking the nilpotency conclusion for one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thm18Report {
    /// dim I < p, K solvable, α non-singular and (α, β) compatible.
    pub hypotheses_hold: bool,
    pub dim_below_p: bool,
    pub solvable: bool,
    pub alpha_nonsingular: bool,
    pub compatible: bool,
    /// ψ(e) is nilpotent for every basis element e of K.
    pub all_psi_nilpotent: bool,
}

/// Over a finite field every invertible α has finite order, so only the
/// remaining hypotheses are checked.
pub fn verify_theorem_1_8(rep: &Representation, pair: &CompatPair) -> Thm18Report {
    let k = rep.algebra();
    let p = k.field().characteristic() as usize;
    let dim_below_p = rep.module_dim() < p;
    let solvable = k.is_solvable();
    let alpha_nonsingular = pair.alpha.is_invertible();
    let compatible = pair.is_compatible(rep);
    Thm18Report {
        hypotheses_hold: dim_below_p && solvable && alpha_nonsingular && compatible,
        dim_below_p,
        solvable,
        alpha_nonsingular,
        compatible,
        all_psi_nilpotent: rep.matrices().iter().all(Mat::is_nilpotent),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deriv::derivation_space;
    use crate::field::make_field;
    use crate::liealg::{semidirect_sum, LieAlg};

    #[test]
    fn trivial_rep_gives_everything() {
        let f = make_field(3, 1).unwrap();
        let h = LieAlg::heisenberg(&f);
        let rep = Representation::trivial(h.clone(), 2);
        assert_eq!(compatible_pair_space(&rep).len(), derivation_space(&h).len() + 4);
    }

    #[test]
    fn pairs_induce_derivations_of_the_semidirect_sum() {
        let f = make_field(3, 2).unwrap();
        let k = LieAlg::abelian(&f, 1);
        let x = Mat::from_fn(&f, 3, 3, |r, c| if r == (c + 1) % 3 { f.one() } else { f.zero() });
        let rep = Representation::new(k, 3, vec![x]).unwrap();
        let l = semidirect_sum(&rep, &LieAlg::abelian(&f, 3)).unwrap();
        let pairs = compatible_pair_space(&rep);
        assert!(!pairs.is_empty());
        for pr in &pairs {
            assert!(pr.is_compatible(&rep));
            assert!(is_derivation(&l, &pr.as_derivation()));
        }
    }
}

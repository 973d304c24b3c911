use super::{is_derivation, Derivation};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::liealg::LieAlg;
use crate::linalg::{eigen_decomposition, unit, Mat, Subspace, Vector};

/// L = ⊕ L_a over the additive group of the field, [L_a, L_b] ⊆ L_{a+b}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    components: Vec<(Scalar, Subspace)>,
}

impl Grading {
    /// Validates directness, completeness and bracket compatibility.
    /// Zero components are dropped; the rest are sorted by degree.
    pub fn new(l: &LieAlg, components: Vec<(Scalar, Subspace)>) -> Result<Grading> {
        let mut components: Vec<_> = components.into_iter().filter(|(_, s)| !s.is_zero()).collect();
        components.sort_by_key(|(a, _)| *a);
        if components.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidGrading("repeated degree".into()));
        }
        let n = l.dim();
        let total = components.iter().fold(Subspace::zero(l.field(), n), |acc, (_, s)| acc.sum(s));
        let dims: usize = components.iter().map(|(_, s)| s.dim()).sum();
        if dims != n || !total.is_full() {
            return Err(Error::InvalidGrading("components do not form a direct sum equal to L".into()));
        }
        let f = l.field();
        let g = Grading { components };
        for (a, sa) in &g.components {
            for (b, sb) in &g.components {
                let target = g.component(f.add(*a, *b));
                for u in sa.basis() {
                    for v in sb.basis() {
                        let w = l.bracket(u, v);
                        let ok = match &target {
                            Some(t) => t.contains(&w),
                            None => w.iter().all(|c| c.is_zero()),
                        };
                        if !ok {
                            return Err(Error::InvalidGrading(format!(
                                "[L_{}, L_{}] is not contained in L_{}",
                                f.fmt_scalar(*a),
                                f.fmt_scalar(*b),
                                f.fmt_scalar(f.add(*a, *b))
                            )));
                        }
                    }
                }
            }
        }
        Ok(g)
    }

    /// Grading in which e_i is homogeneous of degree `degrees[i]`.
    pub fn from_basis_degrees(l: &LieAlg, degrees: &[Scalar]) -> Result<Grading> {
        if degrees.len() != l.dim() {
            return Err(Error::Dimension("one degree per basis element".into()));
        }
        let mut comps: Vec<(Scalar, Vec<Vector>)> = Vec::new();
        for (i, &d) in degrees.iter().enumerate() {
            match comps.iter_mut().find(|(a, _)| *a == d) {
                Some((_, v)) => v.push(unit(l.dim(), i)),
                None => comps.push((d, vec![unit(l.dim(), i)])),
            }
        }
        let comps = comps
            .into_iter()
            .map(|(a, v)| (a, Subspace::span(l.field(), l.dim(), &v)))
            .collect();
        Grading::new(l, comps)
    }

    pub fn components(&self) -> &[(Scalar, Subspace)] {
        &self.components
    }

    pub fn component(&self, degree: Scalar) -> Option<&Subspace> {
        self.components.iter().find(|(a, _)| *a == degree).map(|(_, s)| s)
    }

    pub fn degrees(&self) -> Vec<Scalar> {
        self.components.iter().map(|(a, _)| *a).collect()
    }

    /// Homogeneous basis vectors with their degrees.
    pub fn homogeneous_basis(&self) -> Vec<(Scalar, Vector)> {
        self.components
            .iter()
            .flat_map(|(a, s)| s.basis().iter().map(move |v| (*a, v.clone())))
            .collect()
    }
}

/// The map acting as multiplication by a on L_a.
pub fn derivation_from_grading(l: &LieAlg, g: &Grading) -> Result<Derivation> {
    let f = l.field();
    let hb = g.homogeneous_basis();
    if hb.len() != l.dim() {
        return Err(Error::InvalidGrading("grading of a different algebra".into()));
    }
    let p = Mat::from_cols(f, l.dim(), &hb.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>());
    let d = Mat::diag(f, &hb.iter().map(|(a, _)| *a).collect::<Vec<_>>());
    let m = p.mul(&d).mul(&p.inverse()?);
    if !is_derivation(l, &m) {
        return Err(Error::Invariant("grading derivation fails the Leibniz rule".into()));
    }
    Ok(Derivation::unchecked(m))
}

/// Eigenspace grading of a derivation that diagonalizes over L's field.
pub fn grading_from_derivation(l: &LieAlg, d: &Derivation) -> Result<Grading> {
    let eig = eigen_decomposition(d.matrix());
    let total: usize = eig.iter().map(|(_, s)| s.dim()).sum();
    if total != l.dim() {
        let f = l.field();
        return Err(Error::NotDiagonalizable {
            p: f.characteristic(),
            k: f.degree(),
        });
    }
    Grading::new(l, eig).map_err(|e| Error::Invariant(format!("eigenspaces of a derivation: {e}")))
}

/// Result of scanning homogeneous pairs for the graded Engel condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EngelReport {
    /// [x^n, y] = 0 for all homogeneous x, y; `nilpotent` is the
    /// independent nilpotency verdict for L.
    Engel { n: usize, nilpotent: bool },
    /// Homogeneous x, y with [x^n, y] ≠ 0 for every n ≤ n_max.
    Witness { x: Vector, y: Vector, n_max: usize },
}

pub fn graded_engel_check(l: &LieAlg, g: &Grading, n_max: usize) -> EngelReport {
    let hb = g.homogeneous_basis();
    // ad(x)^n y for all pairs, advanced one power at a time
    let mut cur: Vec<Vec<Vector>> = hb
        .iter()
        .map(|_| hb.iter().map(|(_, y)| y.clone()).collect())
        .collect();
    for n in 1..=n_max {
        let mut all_zero = true;
        for (i, (_, x)) in hb.iter().enumerate() {
            for w in cur[i].iter_mut() {
                *w = l.bracket(x, w);
                all_zero &= w.iter().all(|c| c.is_zero());
            }
        }
        if all_zero {
            return EngelReport::Engel {
                n,
                nilpotent: l.is_nilpotent(),
            };
        }
    }
    for (i, (_, x)) in hb.iter().enumerate() {
        if let Some(j) = cur[i].iter().position(|w| w.iter().any(|c| !c.is_zero())) {
            return EngelReport::Witness {
                x: x.clone(),
                y: hb[j].1.clone(),
                n_max,
            };
        }
    }
    unreachable!("some pair survived to n_max")
}

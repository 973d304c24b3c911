use super::{is_xp_cyclic, PCyclicSummand};
use crate::deriv::{codim_one_abelian, normalize_derivation, splitting_degree, Derivation};
use crate::error::{Error, Result};
use crate::field::{make_field, Embedding, FiniteField, Scalar};
use crate::liealg::LieAlg;
use crate::linalg::{cyclic_coordinates, eigen_decomposition, krylov, minpoly, unit, Mat, Poly, Subspace, Vector};
use crate::pdecomp::primary_decomposition;
use rayon::prelude::*;

/// Ē_a = E_a ⊕ … ⊕ E_{a+p−1} inside one x-primary component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenCosetBlock {
    pub base: Scalar,
    /// The eigenvalue of x on the block.
    pub lambda: Scalar,
    /// eigenspaces[j] = E_{base+j}.
    pub eigenspaces: Vec<Subspace>,
    pub space: Subspace,
}

/// Output of the full pipeline, over the field where everything splits.
#[derive(Clone, Debug)]
pub struct XpDecomposition {
    pub field: FiniteField,
    pub algebra: LieAlg,
    pub x: Vector,
    pub delta: Derivation,
    pub derived: Subspace,
    pub blocks: Vec<EigenCosetBlock>,
    pub summands: Vec<PCyclicSummand>,
}

impl XpDecomposition {
    /// ad x on the working algebra.
    pub fn ad_x(&self) -> Mat {
        self.algebra.ad(&self.x)
    }

    /// The cyclic spans are (x,p)-cyclic, independent, and fill L'.
    pub fn direct_sum_certificate(&self) -> Result<()> {
        let ax = self.ad_x();
        let n = self.algebra.dim();
        let mut total = Subspace::zero(&self.field, n);
        let mut dims = 0;
        for s in &self.summands {
            let span = s.span(&ax);
            let (ok, why) = is_xp_cyclic(&ax, &span);
            if !ok {
                return Err(Error::Invariant(format!("summand is not (x,p)-cyclic: {why}")));
            }
            if relative_minpoly_of(&ax, &s.generator) != s.minpoly {
                return Err(Error::Invariant("stored minimal polynomial is stale".into()));
            }
            dims += span.dim();
            total = total.sum(&span);
        }
        if dims != total.dim() {
            return Err(Error::Invariant("summands are not independent".into()));
        }
        if total != self.derived {
            return Err(Error::Invariant("summands do not span L'".into()));
        }
        Ok(())
    }

    /// Summand dimensions, ascending.
    pub fn dims(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.summands.iter().map(PCyclicSummand::dim).collect();
        d.sort_unstable();
        d
    }
}

fn relative_minpoly_of(x: &Mat, v: &[Scalar]) -> Poly {
    krylov(x, v).1
}

struct LocalSummand {
    v: Vector,
    q: Poly,
    a: Scalar,
}

/// Decomposes one block into (x,p)-cyclic summands generated by
/// δ-eigenvectors; x and delta act on the ambient space of the block.
pub fn xp_decompose_primary(x: &Mat, delta: &Mat, block: &EigenCosetBlock) -> Result<Vec<PCyclicSummand>> {
    let sp = &block.space;
    let xl = sp
        .restrict(x)
        .ok_or_else(|| Error::Hypothesis("block is not x-invariant".into()))?;
    let dl = sp
        .restrict(delta)
        .ok_or_else(|| Error::Hypothesis("block is not delta-invariant".into()))?;
    let f = x.field();
    if xl.rows() > 0 {
        let lam = block.lambda;
        if lam.is_zero() {
            return Err(Error::Hypothesis("x is singular on the block".into()));
        }
        let q = minpoly(&xl);
        let m = q.degree().unwrap();
        if q != Poly::linear(f, lam).pow(m as u64) {
            return Err(Error::Hypothesis(format!("x has minimal polynomial {q} on the block, not a power of t - lambda")));
        }
    }
    if xl.mul(&dl).add(&xl) != dl.mul(&xl) {
        return Err(Error::Hypothesis("delta x - x delta != x on the block".into()));
    }
    let p = f.characteristic() as usize;
    let local = decompose_local(&xl, &dl, block.lambda, p)?;
    local
        .into_iter()
        .map(|s| {
            Ok(PCyclicSummand {
                generator: sp.combine(&s.v),
                r: s.q.degree().unwrap() / p,
                minpoly: s.q,
                eigenvalue: Some(s.a),
            })
        })
        .collect()
}

/// x has minimal polynomial a power of (t − λ), δx − xδ = x, and δ is
/// diagonalizable with eigenvalues in one coset of F_p.
fn decompose_local(x: &Mat, d: &Mat, lam: Scalar, p: usize) -> Result<Vec<LocalSummand>> {
    let f = x.field();
    let n = x.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let eig = eigen_decomposition(d);
    if eig.iter().map(|(_, s)| s.dim()).sum::<usize>() != n {
        return Err(Error::Invariant("delta is not diagonalizable on the block".into()));
    }
    let m = minpoly(x).degree().unwrap();
    // (i) first eigenvector in the canonical eigenbasis attaining the block
    // minpoly; its eigenvalue becomes the base a.
    let (v0, q0, a) = eig
        .iter()
        .flat_map(|(b, s)| s.basis().iter().map(move |v| (v, *b)))
        .map(|(v, b)| (v, relative_minpoly_of(x, v), b))
        .find(|(_, q, _)| q.degree() == Some(m))
        .map(|(v, q, b)| (v.clone(), q, b))
        .ok_or_else(|| Error::Hypothesis("no eigenvector attains the block minimal polynomial".into()))?;
    let (seq0, _) = krylov(x, &v0);
    let i0 = Subspace::span(f, n, &seq0);
    let mut out = vec![LocalSummand { v: v0.clone(), q: q0, a }];
    if m == n {
        return Ok(out);
    }
    // (ii) J = I / I₀ with the section σ supported on the non-pivot indices
    let comp = i0.complement_indices();
    let proj = |v: &[Scalar]| -> Vector {
        let r = i0.reduce(v);
        comp.iter().map(|&c| r[c]).collect()
    };
    let section = |u: &[Scalar]| -> Vector {
        let mut v = vec![Scalar::ZERO; n];
        for (&c, &a) in comp.iter().zip(u) {
            v[c] = a;
        }
        v
    };
    let k = comp.len();
    let xj = Mat::from_cols(f, k, &(0..k).map(|j| proj(&x.mul_vec(&section(&unit(k, j))))).collect::<Vec<_>>());
    let dj = Mat::from_cols(f, k, &(0..k).map(|j| proj(&d.mul_vec(&section(&unit(k, j))))).collect::<Vec<_>>());
    // eigenbasis of I for the eigencomponent projection
    let basis: Vec<Vector> = eig.iter().flat_map(|(_, s)| s.basis().iter().cloned()).collect();
    let owners: Vec<Scalar> = eig.iter().flat_map(|(b, s)| std::iter::repeat(*b).take(s.dim())).collect();
    let pm = Mat::from_cols(f, n, &basis);
    let ea = &eig.iter().find(|(b, _)| *b == a).unwrap().1;
    for s in decompose_local(&xj, &dj, lam, p)? {
        // (iii) move the class into eigenvalue a by a power of x
        let ell = (0..p)
            .find(|&l| f.add(s.a, f.from_int(l as i64)) == a)
            .ok_or_else(|| Error::Invariant("quotient eigenvalue outside the coset".into()))?;
        let wj = xj.pow(ell as u128).mul_vec(&s.v);
        let w = section(&wj);
        // then keep only its E_a-component
        let c = pm.solve(&w).expect("eigenvectors span the block");
        let z: Vector = basis
            .iter()
            .zip(&c)
            .zip(&owners)
            .filter(|(_, &b)| b == a)
            .fold(vec![Scalar::ZERO; n], |mut acc, ((bv, &cv), _)| {
                for (t, &e) in acc.iter_mut().zip(bv) {
                    *t = f.add(*t, f.mul(cv, e));
                }
                acc
            });
        let mi = s.q.degree().unwrap();
        let lin = Poly::linear(f, lam).pow(mi as u64);
        let h = cyclic_coordinates(x, &v0, &x.apply_poly(&lin, &z))
            .ok_or_else(|| Error::Invariant("(x - lambda)^m z is not in I0".into()))?;
        if !h.is_in_t_pow_p() {
            return Err(Error::Invariant(format!("lift polynomial {h} is not a polynomial in t^p")));
        }
        let q = h
            .div_exact(&lin)
            .ok_or_else(|| Error::Invariant("(t - lambda)^m does not divide the lift polynomial".into()))?;
        let qv = x.apply_poly(&q, &v0);
        let v: Vector = z.iter().zip(&qv).map(|(&a, &b)| f.sub(a, b)).collect();
        if !ea.contains(&v) {
            return Err(Error::Invariant("lifted generator left E_a".into()));
        }
        let rq = relative_minpoly_of(x, &v);
        if rq != lin {
            return Err(Error::Invariant(format!("lifted generator has minimal polynomial {rq}, expected {lin}")));
        }
        let diff: Vector = v.iter().zip(&w).map(|(&a, &b)| f.sub(a, b)).collect();
        if !i0.contains(&diff) {
            return Err(Error::Invariant("lifted generator is not congruent to w mod I0".into()));
        }
        out.push(LocalSummand { v, q: rq, a });
    }
    Ok(out)
}

/// Splits ad x on L' into (x,p)-cyclic summands, after normalizing δ and
/// extending scalars until δ|L' and x|L' split.
pub fn xp_decompose(l: &LieAlg, x: &[Scalar], delta: &Derivation) -> Result<XpDecomposition> {
    let ld = codim_one_abelian(l, x)?;
    let ax = ld
        .restrict(&l.ad(x))
        .ok_or_else(|| Error::Invariant("L' is not an ideal".into()))?;
    if !ax.is_invertible() {
        return Err(Error::Hypothesis("x acts singularly on L'".into()));
    }
    let norm = normalize_derivation(l, x, delta)?;
    let (field, algebra, xv, dm) = {
        let ld = norm.algebra.derived_algebra();
        let ax = ld.restrict(&norm.algebra.ad(&norm.x)).expect("ideal");
        let m = splitting_degree(&[minpoly(&ax)])?;
        if m == 1 {
            (norm.field, norm.algebra, norm.x, norm.delta)
        } else {
            let f = &norm.field;
            let target = make_field(f.characteristic(), f.degree() * m)?;
            let e = Embedding::new(f, &target)?;
            (
                target.clone(),
                norm.algebra.extend_scalars(&target)?,
                norm.x.iter().map(|&c| e.apply(c)).collect(),
                Derivation::unchecked(norm.delta.matrix().embed(&e)),
            )
        }
    };
    let f = field.clone();
    let p = f.characteristic() as usize;
    let n = algebra.dim();
    let derived = algebra.derived_algebra();
    let adx = algebra.ad(&xv);
    let xr = derived.restrict(&adx).expect("ideal");
    let dr = derived
        .restrict(dm.matrix())
        .ok_or_else(|| Error::Invariant("L' is not delta-invariant".into()))?;
    let mut blocks = Vec::new();
    for comp in primary_decomposition(&xr) {
        if comp.q.degree() != Some(1) {
            return Err(Error::Invariant("x does not split on L' after extension".into()));
        }
        if !comp.space.is_invariant(&dr) {
            return Err(Error::Invariant("primary component is not delta-invariant".into()));
        }
        let lam = f.neg(comp.q.coeff(0));
        let dloc = comp.space.restrict(&dr).unwrap();
        let eig = eigen_decomposition(&dloc);
        let mut used = vec![false; eig.len()];
        for i in 0..eig.len() {
            if used[i] {
                continue;
            }
            let base = eig[i].0;
            let mut spaces = Vec::with_capacity(p);
            for j in 0..p {
                let b = f.add(base, f.from_int(j as i64));
                let k = eig
                    .iter()
                    .position(|(c, _)| *c == b)
                    .ok_or_else(|| Error::Invariant("eigenvalue coset is incomplete".into()))?;
                used[k] = true;
                let global: Vec<Vector> = eig[k]
                    .1
                    .basis()
                    .iter()
                    .map(|v| derived.combine(&comp.space.combine(v)))
                    .collect();
                spaces.push(Subspace::span(&f, n, &global));
            }
            let space = spaces.iter().fold(Subspace::zero(&f, n), |acc, s| acc.sum(s));
            blocks.push(EigenCosetBlock {
                base,
                lambda: lam,
                eigenspaces: spaces,
                space,
            });
        }
    }
    for b in &blocks {
        if !b.space.is_invariant(&adx) || !b.space.is_invariant(dm.matrix()) {
            return Err(Error::Invariant("eigen-coset block is not invariant".into()));
        }
    }
    let parts: Vec<Result<Vec<PCyclicSummand>>> = blocks
        .par_iter()
        .map(|b| xp_decompose_primary(&adx, dm.matrix(), b))
        .collect();
    let mut summands = Vec::new();
    for part in parts {
        summands.extend(part?);
    }
    let out = XpDecomposition {
        field,
        algebra,
        x: xv,
        delta: dm,
        derived,
        blocks,
        summands,
    };
    out.direct_sum_certificate()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::zoo;

    #[test]
    fn cycle_example_is_one_summand() {
        for (p, k) in [(2, 2), (3, 2), (5, 2)] {
            let f = make_field(p, k).unwrap();
            let ex = zoo::mattarei(&f).unwrap();
            let d = xp_decompose(&ex.algebra, &ex.x(), &ex.delta).unwrap();
            assert_eq!(d.dims(), vec![p as usize]);
            let q = &d.summands[0].minpoly;
            assert!(q.is_in_t_pow_p());
        }
    }

    #[test]
    fn heisenberg_is_rejected() {
        let f = make_field(5, 1).unwrap();
        let h = LieAlg::heisenberg(&f);
        let d = Derivation::new(&h, Mat::diag(&f, &[f.from_int(1), f.from_int(2), f.from_int(3)])).unwrap();
        assert!(matches!(xp_decompose(&h, &unit(3, 0), &d), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn scaled_double_shift() {
        // x = λ(shift ⊕ shift) on F^6 over GF(9), δ from the grading
        let f = make_field(3, 2).unwrap();
        let w = f.element_outside_prime_field().unwrap();
        let lam = f.add(w, Scalar::ONE);
        let shift = Mat::companion(&Poly::from_ints(&f, &[-1, 0, 0, 1]));
        let x = Mat::block_diag(&f, &[shift.clone(), shift]).scale(lam);
        let degs: Vec<Scalar> = (0..6).map(|i| f.add(w, f.from_int(i % 3))).collect();
        let delta = Mat::diag(&f, &degs);
        let block = EigenCosetBlock {
            base: w,
            lambda: lam,
            eigenspaces: (0..3).map(|j| Subspace::span(&f, 6, &[unit(6, j), unit(6, j + 3)])).collect(),
            space: Subspace::full(&f, 6),
        };
        // x has eigenvalues λ·ζ with ζ³ = 1, i.e. only λ in char 3
        let s = xp_decompose_primary(&x, &delta, &block).unwrap();
        assert_eq!(s.iter().map(PCyclicSummand::dim).collect::<Vec<_>>(), vec![3, 3]);
    }
}

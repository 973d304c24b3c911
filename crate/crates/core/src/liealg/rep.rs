use super::LieAlg;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{Mat, Subspace, Vector};

/// A homomorphism ψ: K → gl(I), given on the basis of K.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    algebra: LieAlg,
    module_dim: usize,
    psi: Vec<Mat>,
}

impl Representation {
    /// Validates ψ([e_a, e_b]) = [ψ(e_a), ψ(e_b)] on all basis pairs.
    pub fn new(algebra: LieAlg, module_dim: usize, psi: Vec<Mat>) -> Result<Representation> {
        if psi.len() != algebra.dim() {
            return Err(Error::InvalidRepresentation(format!(
                "{} matrices for an algebra of dimension {}",
                psi.len(),
                algebra.dim()
            )));
        }
        if let Some(m) = psi.iter().find(|m| m.rows() != module_dim || m.cols() != module_dim) {
            return Err(Error::InvalidRepresentation(format!(
                "{}x{} matrix on a module of dimension {module_dim}",
                m.rows(),
                m.cols()
            )));
        }
        if psi.iter().any(|m| m.field() != algebra.field()) {
            return Err(Error::FieldMismatch);
        }
        let r = Representation {
            algebra,
            module_dim,
            psi,
        };
        let n = r.algebra.dim();
        for a in 0..n {
            for b in a + 1..n {
                let lhs = r.act(&r.algebra.basis_bracket(a, b));
                if lhs != r.psi[a].commutator(&r.psi[b]) {
                    return Err(Error::InvalidRepresentation(format!(
                        "psi([e{a}, e{b}]) differs from [psi(e{a}), psi(e{b})]"
                    )));
                }
            }
        }
        Ok(r)
    }

    pub fn trivial(algebra: LieAlg, module_dim: usize) -> Representation {
        let psi = vec![Mat::zeros(algebra.field(), module_dim, module_dim); algebra.dim()];
        Representation {
            algebra,
            module_dim,
            psi,
        }
    }

    pub fn algebra(&self) -> &LieAlg {
        &self.algebra
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn matrices(&self) -> &[Mat] {
        &self.psi
    }

    /// ψ(k) for k given in the basis of K.
    pub fn act(&self, k: &[Scalar]) -> Mat {
        let f = self.algebra.field();
        let mut m = Mat::zeros(f, self.module_dim, self.module_dim);
        for (c, p) in k.iter().zip(&self.psi) {
            if !c.is_zero() {
                m = m.add(&p.scale(*c));
            }
        }
        m
    }

    /// {k : ψ(k) = 0}
    pub fn kernel(&self) -> Subspace {
        let f = self.algebra.field();
        let flat: Vec<Vector> = self.psi.iter().map(|m| m.entries().to_vec()).collect();
        let m2 = self.module_dim * self.module_dim;
        if m2 == 0 {
            return self.algebra.full_space();
        }
        Mat::from_cols(f, m2, &flat).kernel()
    }

    pub fn is_faithful(&self) -> bool {
        self.kernel().is_zero()
    }
}

/// K ⋉ I on the basis (basis of K, basis of I), with
/// [(k1, v1), (k2, v2)] = ([k1, k2], ψ(k1)v2 − ψ(k2)v1 + [v1, v2]).
pub fn semidirect_sum(rep: &Representation, ideal: &LieAlg) -> Result<LieAlg> {
    let k = rep.algebra();
    let (dk, di) = (k.dim(), ideal.dim());
    if di != rep.module_dim() {
        return Err(Error::InvalidRepresentation(format!(
            "module has dimension {}, ideal has dimension {di}",
            rep.module_dim()
        )));
    }
    if ideal.field() != k.field() {
        return Err(Error::FieldMismatch);
    }
    if !ideal.is_abelian() {
        // ψ must land in Der I
        for (a, m) in rep.matrices().iter().enumerate() {
            for i in 0..di {
                for j in i + 1..di {
                    let lhs = m.mul_vec(&ideal.basis_bracket(i, j));
                    let l = ideal.bracket(&m.col(i), &crate::linalg::unit(di, j));
                    let r = ideal.bracket(&crate::linalg::unit(di, i), &m.col(j));
                    let rhs: Vector = l.iter().zip(&r).map(|(&x, &y)| k.field().add(x, y)).collect();
                    if lhs != rhs {
                        return Err(Error::InvalidRepresentation(format!(
                            "psi(e{a}) is not a derivation of the ideal"
                        )));
                    }
                }
            }
        }
    }
    let n = dk + di;
    let f = k.field();
    let mut sc = Vec::new();
    let pad = |v: &[Scalar], offset: usize| -> Vector {
        let mut out = vec![Scalar::ZERO; n];
        out[offset..offset + v.len()].copy_from_slice(v);
        out
    };
    for (i, j, v) in k.structure_constants() {
        sc.push((*i, *j, pad(v, 0)));
    }
    for a in 0..dk {
        for j in 0..di {
            sc.push((a, dk + j, pad(&rep.matrices()[a].col(j), dk)));
        }
    }
    for (i, j, v) in ideal.structure_constants() {
        sc.push((dk + i, dk + j, pad(v, dk)));
    }
    let mut l = LieAlg::new(f, n, sc)?;
    let labels: Vec<String> = (0..dk)
        .map(|i| k.label(i))
        .chain((0..di).map(|i| match ideal.labels() {
            Some(ls) => ls[i].clone(),
            None => format!("v{}", i + 1),
        }))
        .collect();
    l.labels = Some(labels);
    Ok(l)
}

/// The Lie subalgebra of gl_m spanned by iterated commutators of the
/// given matrices.
///
/// The basis consists of the independent generators followed by raw
/// commutators in order of discovery, so commutators of homogeneous
/// elements stay homogeneous. Returns the abstract algebra together with
/// the matrix of each basis element.
pub fn gl_subalgebra_generated(mats: &[Mat]) -> Result<(LieAlg, Vec<Mat>)> {
    let Some(first) = mats.first() else {
        return Err(Error::Dimension("no generators".into()));
    };
    let f = first.field().clone();
    let m = first.rows();
    if mats.iter().any(|a| a.rows() != m || a.cols() != m) {
        return Err(Error::Dimension("generators must be square of equal size".into()));
    }
    let mut basis: Vec<Mat> = Vec::new();
    let mut span = Subspace::zero(&f, m * m);
    let push = |a: Mat, basis: &mut Vec<Mat>, span: &mut Subspace| {
        if !span.contains(a.entries()) {
            *span = span.sum(&Subspace::span(&f, m * m, &[a.entries().to_vec()]));
            basis.push(a);
        }
    };
    for a in mats {
        push(a.clone(), &mut basis, &mut span);
    }
    let mut i = 0;
    while i < basis.len() {
        for j in 0..i {
            let c = basis[j].commutator(&basis[i]);
            push(c, &mut basis, &mut span);
        }
        i += 1;
    }
    let d = basis.len();
    let flat: Vec<Vector> = basis.iter().map(|a| a.entries().to_vec()).collect();
    let coords = Mat::from_cols(&f, m * m, &flat);
    let mut sc = Vec::new();
    for a in 0..d {
        for b in a + 1..d {
            let c = basis[a].commutator(&basis[b]);
            let x = coords.solve(c.entries()).expect("span is closed under commutators");
            sc.push((a, b, x));
        }
    }
    let alg = LieAlg::new(&f, d, sc)?;
    Ok((alg, basis))
}

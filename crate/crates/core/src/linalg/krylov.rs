//! Krylov-sequence methods: minimal polynomials, cyclic and primary
//! subspaces, eigenspaces and multiplicative orders.

use super::mat::{Mat, Vector};
use super::subspace::{unit, Subspace};
use super::Poly;
use crate::error::{Error, Result};
use crate::field::Scalar;

/// Monic q of least degree with q(x)v = 0. By convention q = 1 for v = 0.
pub fn relative_minpoly(x: &Mat, v: &[Scalar]) -> Poly {
    krylov(x, v).1
}

/// The vectors v, xv, …, x^{d-1}v (a basis of the cyclic span) and the
/// relative minimal polynomial of degree d.
pub fn krylov(x: &Mat, v: &[Scalar]) -> (Vec<Vector>, Poly) {
    assert!(x.is_square() && x.cols() == v.len(), "krylov: shape mismatch");
    let f = x.field();
    let n = v.len();
    // Echelon rows with pivot entry 1, each tagged with the polynomial
    // combination of the Krylov vectors it equals.
    let mut rows: Vec<(usize, Vector, Vec<Scalar>)> = Vec::new();
    let mut seq = Vec::new();
    let mut cur = v.to_vec();
    for k in 0..=n {
        let mut w = cur.clone();
        let mut combo = vec![Scalar::ZERO; k + 1];
        combo[k] = Scalar::ONE;
        for (pc, row, rc) in &rows {
            let c = w[*pc];
            if c.is_zero() {
                continue;
            }
            for (a, &b) in w.iter_mut().zip(row) {
                *a = f.sub(*a, f.mul(c, b));
            }
            for (a, &b) in combo.iter_mut().zip(rc) {
                *a = f.sub(*a, f.mul(c, b));
            }
        }
        match w.iter().position(|c| !c.is_zero()) {
            None => return (seq, Poly::new(f, combo)),
            Some(pc) => {
                let inv = f.inv(w[pc]);
                let w: Vector = w.iter().map(|&a| f.mul(a, inv)).collect();
                let combo: Vec<Scalar> = combo.iter().map(|&a| f.mul(a, inv)).collect();
                // keep the stored rows reduced at the new pivot
                for (_, row, rc) in rows.iter_mut() {
                    let c = row[pc];
                    if c.is_zero() {
                        continue;
                    }
                    for (a, &b) in row.iter_mut().zip(&w) {
                        *a = f.sub(*a, f.mul(c, b));
                    }
                    rc.resize(k + 1, Scalar::ZERO);
                    for (a, &b) in rc.iter_mut().zip(&combo) {
                        *a = f.sub(*a, f.mul(c, b));
                    }
                }
                rows.push((pc, w, combo));
            }
        }
        seq.push(cur.clone());
        cur = x.mul_vec(&cur);
    }
    unreachable!("Krylov sequence longer than the dimension")
}

/// Coordinates h with h(x)v = w, deg h < deg q_{x,v}, if w lies in the
/// cyclic span of v.
pub fn cyclic_coordinates(x: &Mat, v: &[Scalar], w: &[Scalar]) -> Option<Poly> {
    let (seq, _) = krylov(x, v);
    if seq.is_empty() {
        return w.iter().all(|c| c.is_zero()).then(|| Poly::zero(x.field()));
    }
    let b = Mat::from_cols(x.field(), v.len(), &seq);
    b.solve(w).map(|c| Poly::new(x.field(), c))
}

pub fn cyclic_span(x: &Mat, v: &[Scalar]) -> Subspace {
    Subspace::span(x.field(), v.len(), &krylov(x, v).0)
}

/// lcm of the relative minimal polynomials of the standard basis vectors.
pub fn minpoly(x: &Mat) -> Poly {
    assert!(x.is_square());
    let n = x.rows();
    let mut q = Poly::one(x.field());
    let mut covered = Subspace::zero(x.field(), n);
    for i in 0..n {
        let e = unit(n, i);
        if covered.contains(&e) {
            continue;
        }
        let (seq, r) = krylov(x, &e);
        q = q.lcm(&r);
        covered = covered.sum(&Subspace::span(x.field(), n, &seq));
        if covered.is_full() {
            break;
        }
    }
    q
}

/// A vector whose relative minimal polynomial equals minpoly(x).
pub fn maximal_vector(x: &Mat) -> Vector {
    let n = x.rows();
    let f = x.field();
    let m = minpoly(x);
    if m.degree() == Some(0) {
        return vec![Scalar::ZERO; n];
    }
    let rel: Vec<Poly> = (0..n).map(|i| relative_minpoly(x, &unit(n, i))).collect();
    let mut v = vec![Scalar::ZERO; n];
    for (g, e) in m.factor().expect("minpoly is non-zero") {
        let ge = g.pow(e as u64);
        // some basis vector sees the full power g^e
        let i = (0..n)
            .find(|&i| ge.divides(&rel[i]))
            .expect("minpoly is the lcm of the basis relative minpolys");
        let cof = rel[i].div_exact(&ge).expect("divides");
        let u = x.apply_poly(&cof, &unit(n, i));
        for (a, b) in v.iter_mut().zip(u) {
            *a = f.add(*a, b);
        }
    }
    v
}

/// Generators of x-cyclic subspaces whose spans sum directly to F^n,
/// with their relative minimal polynomials; each divides the previous one.
pub fn cyclic_decomposition(x: &Mat) -> Vec<(Vector, Poly)> {
    assert!(x.is_square());
    let n = x.rows();
    let f = x.field();
    if n == 0 {
        return Vec::new();
    }
    let v = maximal_vector(x);
    let (seq, q) = krylov(x, &v);
    let d = seq.len();
    if d == n {
        return vec![(v, q)];
    }
    // φ vanishes on x^i v for i < d-1 and is 1 on x^{d-1} v; the joint
    // kernel of φ, φx, …, φx^{d-1} is an x-invariant complement.
    let b = Mat::from_cols(f, n, &seq);
    let mut target = vec![Scalar::ZERO; d];
    target[d - 1] = Scalar::ONE;
    let phi = b.transpose().solve(&target).expect("Krylov vectors are independent");
    let mut rows = Vec::with_capacity(d);
    let mut cur = phi;
    for _ in 0..d {
        rows.push(cur.clone());
        cur = x.transpose().mul_vec(&cur);
    }
    let comp = Mat::from_rows(f, &rows).expect("rectangular").kernel();
    debug_assert_eq!(comp.dim(), n - d);
    let xr = comp.restrict(x).expect("complement is invariant");
    let mut out = vec![(v, q)];
    for (w, r) in cyclic_decomposition(&xr) {
        out.push((comp.combine(&w), r));
    }
    out
}

/// V_0(q(x)) = ker q(x)^n.
pub fn primary_subspace(x: &Mat, q: &Poly) -> Result<Subspace> {
    match q.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        _ => {}
    }
    let n = x.rows();
    Ok(x.eval_poly(q).pow(n.max(1) as u128).kernel())
}

/// Eigenvalues lying in the field, ascending, with full eigenspaces.
pub fn eigen_decomposition(x: &Mat) -> Vec<(Scalar, Subspace)> {
    let f = x.field();
    let n = x.rows();
    if n == 0 {
        return Vec::new();
    }
    let roots = minpoly(x).roots().expect("minpoly is non-zero");
    roots
        .into_iter()
        .map(|l| (l, x.sub(&Mat::scalar(f, n, l)).kernel()))
        .collect()
}

/// Multiplicative order n·p^t of an invertible matrix, p ∤ n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultOrder {
    pub n: u128,
    pub t: u32,
    pub p: u64,
}

impl MultOrder {
    pub fn order(&self) -> u128 {
        self.n * (self.p as u128).pow(self.t)
    }

    pub fn p_power(&self) -> u128 {
        (self.p as u128).pow(self.t)
    }
}

pub fn mult_order(x: &Mat) -> Result<MultOrder> {
    assert!(x.is_square());
    let f = x.field();
    let p = f.characteristic();
    let m = minpoly(x);
    if x.rows() > 0 && m.coeff(0).is_zero() {
        return Err(Error::Singular);
    }
    let fs = m.factor()?;
    let max_e = fs.iter().map(|(_, e)| *e).max().unwrap_or(1);
    let mut t = 0u32;
    while (p as u128).pow(t) < max_e as u128 {
        t += 1;
    }
    let q = f.order() as u128;
    let mut n: u128 = 1;
    for (g, _) in &fs {
        let d = g.degree().unwrap() as u32;
        let group = q
            .checked_pow(d)
            .expect("multiplicative group order overflows u128")
            - 1;
        let tt = Poly::t(f);
        let mut ord = group;
        for r in prime_factors(group) {
            while ord % r == 0 && tt.pow_mod(ord / r, g).is_one() {
                ord /= r;
            }
        }
        n = lcm(n, ord);
    }
    Ok(MultOrder { n, t, p })
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn shift(f: &crate::field::FiniteField, n: usize) -> Mat {
        Mat::from_fn(f, n, n, |r, c| if r == (c + 1) % n { Scalar::ONE } else { Scalar::ZERO })
    }

    #[test]
    fn minpoly_examples() {
        for p in [2u64, 3, 5] {
            let f = make_field(p, 1).unwrap();
            let x = shift(&f, p as usize);
            let tp1 = &Poly::monomial(&f, Scalar::ONE, p as usize) - &Poly::one(&f);
            assert_eq!(minpoly(&x), tp1);
            assert_eq!(relative_minpoly(&x, &unit(p as usize, 0)), tp1);
            assert_eq!(minpoly(&Mat::identity(&f, 3)), Poly::from_ints(&f, &[-1, 1]));
        }
        let f = make_field(5, 1).unwrap();
        let g = Poly::from_ints(&f, &[2, 0, 3, 1]);
        assert_eq!(minpoly(&Mat::companion(&g)), g);
    }

    #[test]
    fn relative_minpoly_of_diagonal() {
        let f = make_field(5, 1).unwrap();
        let x = Mat::diag(&f, &[f.from_int(1), f.from_int(2)]);
        assert_eq!(relative_minpoly(&x, &unit(2, 0)), Poly::from_ints(&f, &[-1, 1]));
        assert!(relative_minpoly(&x, &[Scalar::ZERO, Scalar::ZERO]).is_one());
    }

    #[test]
    fn eigen_examples() {
        let f = make_field(5, 1).unwrap();
        let x = Mat::diag(&f, &[f.from_int(1), f.from_int(1), f.from_int(2)]);
        let e = eigen_decomposition(&x);
        assert_eq!(e.len(), 2);
        assert_eq!((e[0].0, e[0].1.dim()), (f.from_int(1), 2));
        assert_eq!((e[1].0, e[1].1.dim()), (f.from_int(2), 1));
        let f3 = make_field(3, 1).unwrap();
        let e = eigen_decomposition(&shift(&f3, 3));
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].1.basis()[0], vec![Scalar::ONE; 3]);
    }

    #[test]
    fn orders() {
        let f = make_field(3, 1).unwrap();
        assert_eq!(mult_order(&shift(&f, 3)).unwrap(), MultOrder { n: 1, t: 1, p: 3 });
        assert_eq!(mult_order(&Mat::identity(&f, 2)).unwrap().order(), 1);
        let f5 = make_field(5, 1).unwrap();
        let o = mult_order(&Mat::diag(&f5, &[f5.from_int(2)])).unwrap();
        assert_eq!((o.n, o.t), (4, 0));
        assert_eq!(mult_order(&Mat::zeros(&f5, 1, 1)), Err(Error::Singular));
    }

    #[test]
    fn cyclic_examples() {
        let f = make_field(5, 1).unwrap();
        let d = cyclic_decomposition(&Mat::identity(&f, 2));
        assert_eq!(d.len(), 2);
        let c = cyclic_decomposition(&Mat::companion(&Poly::from_ints(&f, &[1, -2, 1])));
        assert_eq!(c.len(), 1);
        let f3 = make_field(3, 1).unwrap();
        let two = Mat::block_diag(&f3, &[shift(&f3, 3), shift(&f3, 3)]);
        let c = cyclic_decomposition(&two);
        assert_eq!(c.len(), 2);
        for (_, q) in &c {
            assert_eq!(*q, Poly::from_ints(&f3, &[-1, 0, 0, 1]));
        }
    }

    #[test]
    fn primary_examples() {
        let f = make_field(5, 1).unwrap();
        let x = Mat::diag(&f, &[f.from_int(1), f.from_int(1), f.from_int(2)]);
        assert_eq!(primary_subspace(&x, &Poly::from_ints(&f, &[-1, 1])).unwrap().dim(), 2);
        assert!(primary_subspace(&x, &Poly::from_ints(&f, &[-3, 1])).unwrap().is_zero());
        assert_eq!(
            primary_subspace(&x, &Poly::one(&f)),
            Err(Error::ConstantPolynomial)
        );
        let f3 = make_field(3, 1).unwrap();
        assert!(primary_subspace(&shift(&f3, 3), &Poly::from_ints(&f3, &[-1, 1])).unwrap().is_full());
    }
}

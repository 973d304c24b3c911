//! Constructors for the example families: x acting on a p-cycle (family
//! `mattarei`), the maximal-class example, the Heisenberg algebra acting on
//! a 2p-dimensional module, and the (p+3)-dimensional Heisenberg module.
//!
//! Every example is a semidirect sum L = K ⋉ I with K on the first basis
//! vectors (x always first) and a grading derivation δ, diagonal in the
//! basis of L.

use std::fmt;
use std::str::FromStr;

use crate::deriv::{derivation_from_grading, is_derivation, Derivation, Grading};
use crate::error::{Error, Result};
use crate::field::{FiniteField, Scalar};
use crate::liealg::{gl_subalgebra_generated, semidirect_sum, LieAlg, Representation};
use crate::linalg::{unit, Mat, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Mattarei,
    MaxClass,
    Heis2p,
    HeisP3,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Mattarei, Family::MaxClass, Family::Heis2p, Family::HeisP3];

    pub fn name(self) -> &'static str {
        match self {
            Family::Mattarei => "mattarei",
            Family::MaxClass => "maxclass",
            Family::Heis2p => "heis2p",
            Family::HeisP3 => "heisp3",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Hypothesis(format!("unknown family {s:?}")))
    }
}

/// Facts claimed for an example, checked by [`Example::check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub derived_dims: Option<Vec<usize>>,
    pub derived_length: usize,
    pub k_dim: usize,
    pub k_class: usize,
    pub module_dim: usize,
}

#[derive(Clone, Debug)]
pub struct Example {
    pub family: Family,
    pub algebra: LieAlg,
    pub rep: Representation,
    pub delta: Derivation,
    /// δ-eigenvalue of each basis vector of L.
    pub degrees: Vec<Scalar>,
    pub params: Vec<(&'static str, Scalar)>,
    pub expected: Expected,
}

/// e_i ↦ e_{i+1}, indices mod n.
pub fn cyclic_shift(f: &FiniteField, n: usize) -> Mat {
    Mat::from_fn(f, n, n, |r, c| if r == (c + 1) % n { f.one() } else { f.zero() })
}

fn outside_prime(f: &FiniteField) -> Result<Scalar> {
    f.element_outside_prime_field()
        .map_err(|_| Error::FieldTooSmall(format!("GF({}) has no element outside F_{}", f.order(), f.characteristic())))
}

/// First element in canonical order satisfying `ok`.
fn scan(f: &FiniteField, ok: impl Fn(Scalar) -> bool) -> Option<Scalar> {
    f.elements().find(|&s| ok(s))
}

fn field_too_small(f: &FiniteField) -> Result<()> {
    let p = f.characteristic();
    if f.order() < p * p {
        return Err(Error::FieldTooSmall(format!("|F| = {} < p^2 = {}", f.order(), p * p)));
    }
    Ok(())
}

impl Example {
    pub fn p(&self) -> u64 {
        self.algebra.field().characteristic()
    }

    pub fn k_dim(&self) -> usize {
        self.rep.algebra().dim()
    }

    pub fn module_dim(&self) -> usize {
        self.rep.module_dim()
    }

    /// The distinguished element x (first basis vector).
    pub fn x(&self) -> Vec<Scalar> {
        unit(self.algebra.dim(), 0)
    }

    /// I as a subspace of L.
    pub fn ideal(&self) -> Subspace {
        let n = self.algebra.dim();
        let vs: Vec<_> = (self.k_dim()..n).map(|i| unit(n, i)).collect();
        Subspace::span(self.algebra.field(), n, &vs)
    }

    /// Verifies the stated facts and collects them as key=value pairs.
    pub fn check(&self) -> Certificate {
        let mut c = Certificate::default();
        let l = &self.algebra;
        let f = l.field();
        let k = self.rep.algebra();
        c.put("family", self.family.name());
        c.put("p", f.characteristic());
        c.put("k", f.degree());
        for (name, v) in &self.params {
            c.put(name, f.fmt_scalar(*v));
        }
        c.put("dim_L", l.dim());
        c.expect("dim_K", k.dim(), self.expected.k_dim);
        c.expect("dim_I", self.module_dim(), self.expected.module_dim);
        c.expect("class_K", fmt_opt(k.nilpotency_class()), fmt_opt(Some(self.expected.k_class)));
        c.check("jacobi", l.validate().is_ok());
        c.check("faithful", self.rep.is_faithful());
        let dims = l.derived_dims();
        match &self.expected.derived_dims {
            Some(e) => c.expect("derived_dims", fmt_list(&dims), fmt_list(e)),
            None => c.put("derived_dims", fmt_list(&dims)),
        }
        c.expect(
            "derived_length",
            fmt_opt(l.derived_length()),
            fmt_opt(Some(self.expected.derived_length)),
        );
        c.expect("nilpotent", l.is_nilpotent(), false);
        c.check("derivation", is_derivation(l, self.delta.matrix()));
        c.check("nonsingular", self.delta.is_nonsingular());
        c.check("L0_zero", self.degrees.iter().all(|d| !d.is_zero()));
        let mut eig = self.degrees.clone();
        eig.sort();
        eig.dedup();
        c.put("distinct_eigenvalues", eig.len());
        let p = f.characteristic() as usize;
        let big_step = dims.windows(2).any(|w| w[0] - w[1] >= p);
        c.check("some_derived_quotient_ge_p", big_step);
        match self.family {
            Family::MaxClass => self.check_max_class(&mut c),
            Family::Heis2p | Family::HeisP3 => self.check_heisenberg(&mut c),
            Family::Mattarei => {}
        }
        c
    }

    fn check_max_class(&self, c: &mut Certificate) {
        let p = self.p() as usize;
        let psi = self.rep.matrices();
        let (x, y) = (&psi[0], &psi[1]);
        let m = self.module_dim();
        // [x^n, y] as iterated commutators
        let mut w = y.clone();
        for _ in 0..p - 1 {
            w = x.commutator(&w);
        }
        c.check("xp1_y_vp1_is_vp", w.mul_vec(&unit(m, p)) == unit(m, p - 1));
        c.check("xp_y_zero", x.commutator(&w).is_zero());
    }

    fn check_heisenberg(&self, c: &mut Certificate) {
        let psi = self.rep.matrices();
        let (x, y, z) = (&psi[0], &psi[1], &psi[2]);
        c.check("xy_bracket_is_z", x.commutator(y) == *z);
        c.check("z_central", x.commutator(z).is_zero() && y.commutator(z).is_zero());
    }
}

fn fmt_list(v: &[usize]) -> String {
    let s: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("[{}]", s.join(","))
}

fn fmt_opt(v: Option<usize>) -> String {
    v.map_or("none".to_string(), |x| x.to_string())
}

/// Line-oriented record of computed facts; `failures` names every check
/// that did not hold.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub entries: Vec<(String, String)>,
    pub failures: Vec<String>,
}

impl Certificate {
    pub fn put(&mut self, key: &str, value: impl fmt::Display) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    pub fn check(&mut self, key: &str, ok: bool) {
        self.put(key, ok);
        if !ok {
            self.failures.push(key.to_string());
        }
    }

    pub fn expect<T: fmt::Display + PartialEq>(&mut self, key: &str, found: T, expected: T) {
        if found != expected {
            self.failures.push(format!("{key} (expected {expected})"));
        }
        self.put(key, found);
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k}={v}")?;
        }
        write!(f, "verdict={}", if self.passed() { "pass" } else { "fail" })?;
        for x in &self.failures {
            write!(f, "\nfailed={x}")?;
        }
        Ok(())
    }
}

/// Degree of a matrix that maps each homogeneous basis vector of the
/// module to a homogeneous vector, all by the same shift.
fn matrix_degree(f: &FiniteField, m: &Mat, module: &[Scalar]) -> Result<Scalar> {
    let mut deg = None;
    for r in 0..m.rows() {
        for col in 0..m.cols() {
            if m.get(r, col).is_zero() {
                continue;
            }
            let d = f.sub(module[r], module[col]);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => {
                    return Err(Error::Invariant("operator is not homogeneous".into()));
                }
                _ => {}
            }
        }
    }
    deg.ok_or_else(|| Error::Invariant("zero operator has no degree".into()))
}

fn assemble(
    family: Family,
    rep: Representation,
    k_degrees: Vec<Scalar>,
    module_degrees: Vec<Scalar>,
    params: Vec<(&'static str, Scalar)>,
    expected: Expected,
    labels: &[String],
) -> Result<Example> {
    let f = rep.algebra().field().clone();
    let ideal = LieAlg::abelian(&f, rep.module_dim()).with_labels(labels);
    let algebra = semidirect_sum(&rep, &ideal)?;
    let mut degrees = k_degrees;
    degrees.extend(module_degrees);
    if let Some(i) = degrees.iter().position(|d| d.is_zero()) {
        return Err(Error::DegreeCollision(format!(
            "basis element {} has degree 0",
            algebra.label(i)
        )));
    }
    let grading = Grading::from_basis_degrees(&algebra, &degrees)
        .map_err(|e| Error::Invariant(format!("example grading: {e}")))?;
    let delta = derivation_from_grading(&algebra, &grading)?;
    Ok(Example {
        family,
        algebra,
        rep,
        delta,
        degrees,
        params,
        expected,
    })
}

fn v_labels(n: usize, from: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{}", i + from)).collect()
}

/// ⟨x⟩ ⋉ V with x a p-cycle on v_0, …, v_{p-1};
/// δ(x) = αx, δ(v_i) = (β + (i+1)α)v_i with α = w, β = 1.
pub fn mattarei(f: &FiniteField) -> Result<Example> {
    field_too_small(f)?;
    let p = f.characteristic() as usize;
    let alpha = outside_prime(f)?;
    let beta = f.one();
    let k = LieAlg::abelian(f, 1).with_labels(&["x"]);
    let rep = Representation::new(k, p, vec![cyclic_shift(f, p)])?;
    let module: Vec<Scalar> = (0..p)
        .map(|i| f.add(beta, f.mul(f.from_int(i as i64 + 1), alpha)))
        .collect();
    assemble(
        Family::Mattarei,
        rep,
        vec![alpha],
        module,
        vec![("alpha", alpha), ("beta", beta)],
        Expected {
            derived_dims: Some(vec![p + 1, p, 0]),
            derived_length: 2,
            k_dim: 1,
            k_class: 1,
            module_dim: p,
        },
        &v_labels(p, 0),
    )
}

/// x: two p-cycles on v_1..v_p and v_{p+1}..v_{2p}; y: v_{p+1} ↦ v_1.
pub fn max_class_generators(f: &FiniteField) -> (Mat, Mat) {
    let p = f.characteristic() as usize;
    let c = cyclic_shift(f, p);
    let x = Mat::block_diag(f, &[c.clone(), c]);
    let mut y = Mat::zeros(f, 2 * p, 2 * p);
    y.set(0, p, f.one());
    (x, y)
}

/// K = ⟨x, y⟩ ≤ gl(I) with its defining representation.
pub fn max_class_module(f: &FiniteField) -> Result<Representation> {
    let (x, y) = max_class_generators(f);
    let (k, mats) = gl_subalgebra_generated(&[x, y])?;
    let labels: Vec<String> = (0..k.dim())
        .map(|i| match i {
            0 => "x".to_string(),
            1 => "y".to_string(),
            _ => format!("z{}", i - 1),
        })
        .collect();
    let m = mats[0].rows();
    Representation::new(k.with_labels(&labels), m, mats)
}

/// Default parameters: a = w and b the first element with b, b − a ∉ F_p.
fn default_ab(f: &FiniteField) -> Result<(Scalar, Scalar)> {
    let a = outside_prime(f)?;
    let b = scan(f, |b| !f.in_prime_field(b) && !f.in_prime_field(f.sub(b, a))).ok_or_else(|| {
        Error::DegreeCollision(format!(
            "GF({}) has no b with b and b - a outside F_{}",
            f.order(),
            f.characteristic()
        ))
    })?;
    Ok((a, b))
}

/// K ⋉ I for the maximal-class K, graded by deg x = 1, deg y = a,
/// deg v_{kp+i} = b − ka + i − 1.
pub fn max_class_example(f: &FiniteField, ab: Option<(Scalar, Scalar)>) -> Result<Example> {
    field_too_small(f)?;
    let p = f.characteristic() as usize;
    let (a, b) = match ab {
        Some(v) => v,
        None => default_ab(f)?,
    };
    let rep = max_class_module(f)?;
    let module: Vec<Scalar> = (0..2 * p)
        .map(|idx| {
            let (k, i) = (idx / p, idx % p + 1);
            let ka = f.mul(f.from_int(k as i64), a);
            f.add(f.sub(b, ka), f.from_int(i as i64 - 1))
        })
        .collect();
    let k_degrees = rep
        .matrices()
        .iter()
        .map(|m| matrix_degree(f, m, &module))
        .collect::<Result<Vec<_>>>()?;
    assemble(
        Family::MaxClass,
        rep,
        k_degrees,
        module,
        vec![("a", a), ("b", b)],
        Expected {
            derived_dims: Some(vec![3 * p + 1, 3 * p - 1, p, 0]),
            derived_length: 3,
            k_dim: p + 1,
            k_class: p,
            module_dim: 2 * p,
        },
        &v_labels(2 * p, 1),
    )
}

/// The displayed x, y, z on the 2p-dimensional module.
pub fn heisenberg_2p_displayed(f: &FiniteField) -> (Mat, Mat, Mat) {
    let p = f.characteristic() as usize;
    let c = cyclic_shift(f, p);
    let x = Mat::block_diag(f, &[c.clone(), c]);
    let mut y = Mat::zeros(f, 2 * p, 2 * p);
    let mut z = Mat::zeros(f, 2 * p, 2 * p);
    for j in 1..=p {
        // v_{p+j} ↦ (j−1) v_j and v_{p+j} ↦ v_{j+1}, v_{2p} ↦ v_1
        y.set(j - 1, p + j - 1, f.from_int(j as i64 - 1));
        z.set(j % p, p + j - 1, f.one());
    }
    (x, y, z)
}

/// H ⋉ I with ψ(x), ψ(y) as displayed and ψ(z) = [ψ(x), ψ(y)], which is
/// the negative of the displayed z. Degrees: x ↦ 1, y ↦ a, z ↦ 1 + a,
/// v_{kp+i} ↦ b − ka + i − 2.
pub fn heisenberg_2p(f: &FiniteField, ab: Option<(Scalar, Scalar)>) -> Result<Example> {
    field_too_small(f)?;
    let p = f.characteristic() as usize;
    let (a, b) = match ab {
        Some(v) => v,
        None => default_ab(f)?,
    };
    let (x, y, _) = heisenberg_2p_displayed(f);
    let z = x.commutator(&y);
    let rep = Representation::new(LieAlg::heisenberg(f), 2 * p, vec![x, y, z])?;
    let module: Vec<Scalar> = (0..2 * p)
        .map(|idx| {
            let (k, i) = (idx / p, idx % p + 1);
            let ka = f.mul(f.from_int(k as i64), a);
            f.add(f.sub(b, ka), f.from_int(i as i64 - 2))
        })
        .collect();
    let one = f.one();
    assemble(
        Family::Heis2p,
        rep,
        vec![one, a, f.add(one, a)],
        module,
        vec![("a", a), ("b", b)],
        Expected {
            derived_dims: Some(vec![2 * p + 3, 2 * p + 1, p, 0]),
            derived_length: 3,
            k_dim: 3,
            k_class: 2,
            module_dim: 2 * p,
        },
        &v_labels(2 * p, 1),
    )
}

/// Default parameters: a = w, then b, c, d scanned in canonical order so
/// that every eigenvalue is non-zero.
fn default_abcd(f: &FiniteField) -> Result<[Scalar; 4]> {
    let p = f.characteristic();
    let a = outside_prime(f)?;
    let none = || Error::DegreeCollision("no parameters with all eigenvalues non-zero".into());
    let b = scan(f, |b| !b.is_zero() && !f.add(a, b).is_zero()).ok_or_else(none)?;
    let c = scan(f, |c| (0..p).all(|i| !f.add(c, f.mul(f.from_int(i as i64), a)).is_zero())).ok_or_else(none)?;
    let d = scan(f, |d| {
        !d.is_zero() && !f.add(b, d).is_zero() && !f.add(f.add(a, b), d).is_zero()
    })
    .ok_or_else(none)?;
    Ok([a, b, c, d])
}

/// H acting on ⟨v_1, v_2, v_3, u_0, …, u_{p-1}⟩ by x: v_2 ↦ v_1,
/// u_i ↦ u_{i+1}; y: v_3 ↦ v_2; z: v_3 ↦ v_1. The action of y on the u_i
/// is zero.
pub fn heisenberg_p3_module(f: &FiniteField) -> Result<Representation> {
    let p = f.characteristic() as usize;
    let m = p + 3;
    let mut x = Mat::zeros(f, m, m);
    x.set(0, 1, f.one());
    for i in 0..p {
        x.set(3 + (i + 1) % p, 3 + i, f.one());
    }
    let mut y = Mat::zeros(f, m, m);
    y.set(1, 2, f.one());
    let mut z = Mat::zeros(f, m, m);
    z.set(0, 2, f.one());
    Representation::new(LieAlg::heisenberg(f), m, vec![x, y, z])
}

/// δ(x) = ax, δ(y) = by, δ(z) = (a+b)z, δ(u_i) = (c+ia)u_i,
/// δ(v_1) = (a+b+d)v_1, δ(v_2) = (b+d)v_2, δ(v_3) = dv_3.
pub fn heisenberg_p3(f: &FiniteField, abcd: Option<[Scalar; 4]>) -> Result<Example> {
    let p = f.characteristic() as usize;
    if p == 2 {
        return Err(Error::Hypothesis("p must be odd".into()));
    }
    let [a, b, c, d] = match abcd {
        Some(v) => v,
        None => default_abcd(f)?,
    };
    let rep = heisenberg_p3_module(f)?;
    let mut module = vec![f.add(f.add(a, b), d), f.add(b, d), d];
    module.extend((0..p).map(|i| f.add(c, f.mul(f.from_int(i as i64), a))));
    let mut labels = vec!["v1".to_string(), "v2".to_string(), "v3".to_string()];
    labels.extend((0..p).map(|i| format!("u{i}")));
    assemble(
        Family::HeisP3,
        rep,
        vec![a, b, f.add(a, b)],
        module,
        vec![("a", a), ("b", b), ("c", c), ("d", d)],
        Expected {
            derived_dims: None,
            derived_length: 3,
            k_dim: 3,
            k_class: 2,
            module_dim: p + 3,
        },
        &labels,
    )
}

pub fn build(family: Family, f: &FiniteField) -> Result<Example> {
    match family {
        Family::Mattarei => mattarei(f),
        Family::MaxClass => max_class_example(f, None),
        Family::Heis2p => heisenberg_2p(f, None),
        Family::HeisP3 => heisenberg_p3(f, None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn cycle_example_p3() {
        let f = make_field(3, 2).unwrap();
        let ex = mattarei(&f).unwrap();
        assert_eq!(ex.algebra.dim(), 4);
        assert_eq!(ex.algebra.derived_dims(), vec![4, 3, 0]);
        let c = ex.check();
        assert!(c.passed(), "{c}");
        // [x^3, v_0] = v_0
        let v0 = unit(4, 1);
        assert_eq!(ex.algebra.bracket_pow(&ex.x(), 3, &v0), v0);
    }

    #[test]
    fn cycle_example_needs_an_extension() {
        let f = make_field(5, 1).unwrap();
        assert!(matches!(mattarei(&f), Err(Error::FieldTooSmall(_))));
        let f4 = make_field(2, 2).unwrap();
        let ex = mattarei(&f4).unwrap();
        assert_eq!(ex.algebra.dim(), 3);
        assert!(!ex.algebra.is_nilpotent());
    }

    #[test]
    fn max_class_p3() {
        let f = make_field(3, 2).unwrap();
        let ex = max_class_example(&f, None).unwrap();
        let c = ex.check();
        assert!(c.passed(), "{c}");
        assert_eq!(ex.algebra.derived_dims(), vec![10, 8, 3, 0]);
    }

    #[test]
    fn max_class_p2_over_gf4_has_no_valid_degrees() {
        let f = make_field(2, 2).unwrap();
        assert_eq!(max_class_module(&f).unwrap().algebra().dim(), 3);
        assert!(matches!(max_class_example(&f, None), Err(Error::DegreeCollision(_))));
    }

    #[test]
    fn heis2p_p3() {
        let f = make_field(3, 2).unwrap();
        let ex = heisenberg_2p(&f, None).unwrap();
        let c = ex.check();
        assert!(c.passed(), "{c}");
        assert_eq!(ex.algebra.derived_dims(), vec![9, 7, 3, 0]);
        let (_, _, zd) = heisenberg_2p_displayed(&f);
        assert_eq!(ex.rep.matrices()[2], zd.neg());
    }

    #[test]
    fn heisp3_rejects_p2() {
        let f = make_field(2, 3).unwrap();
        assert!(matches!(heisenberg_p3(&f, None), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn family_names_roundtrip() {
        for fam in Family::ALL {
            assert_eq!(fam.name().parse::<Family>().unwrap(), fam);
        }
        assert!("nope".parse::<Family>().is_err());
    }
}

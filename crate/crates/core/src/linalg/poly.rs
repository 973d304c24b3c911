use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FiniteField, Scalar};

/// Univariate polynomial over a finite field, coefficients low to high.
///
/// The coefficient vector never has trailing zeros, so the zero polynomial
/// has no coefficients at all.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FiniteField,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: &FiniteField, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_ints(field: &FiniteField, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &FiniteField) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &FiniteField) -> Poly {
        Poly::constant(field, Scalar::ONE)
    }

    pub fn constant(field: &FiniteField, c: Scalar) -> Poly {
        Poly::new(field, vec![c])
    }

    /// c·t^d
    pub fn monomial(field: &FiniteField, c: Scalar, d: usize) -> Poly {
        let mut coeffs = vec![Scalar::ZERO; d + 1];
        coeffs[d] = c;
        Poly::new(field, coeffs)
    }

    /// The polynomial t.
    pub fn t(field: &FiniteField) -> Poly {
        Poly::monomial(field, Scalar::ONE, 1)
    }

    /// t - c
    pub fn linear(field: &FiniteField, c: Scalar) -> Poly {
        Poly::new(field, vec![field.neg(c), Scalar::ONE])
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).copied().unwrap_or(Scalar::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Scalar::ONE
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Scalar {
        self.coeffs.last().copied().unwrap_or(Scalar::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Scalar::ONE
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(self.field.inv(self.lead()))
    }

    pub fn scale(&self, c: Scalar) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn eval(&self, x: Scalar) -> Scalar {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        Poly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    /// Quotient and remainder.
    ///
    /// # Panics
    /// If `d` is zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let f = &self.field;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let inv_lead = f.inv(d.lead());
        let mut r = self.coeffs.clone();
        let mut q = vec![Scalar::ZERO; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = f.mul(r[i + dd], inv_lead);
            if c.is_zero() {
                continue;
            }
            q[i] = c;
            for (j, &dj) in d.coeffs.iter().enumerate() {
                r[i + j] = f.sub(r[i + j], f.mul(c, dj));
            }
        }
        r.truncate(dd);
        (Poly::new(f, q), Poly::new(f, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let g = self.gcd(other);
        (self * &other.div_exact(&g).expect("gcd divides")).monic()
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// self^e mod m
    pub fn pow_mod(&self, mut e: u128, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(m);
            }
        }
        acc
    }

    /// True when only monomials t^{p i} occur.
    pub fn is_in_t_pow_p(&self) -> bool {
        let p = self.field.characteristic() as usize;
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || i % p == 0)
    }

    /// For g with only t^{pi} monomials, the unique h with h^p = g.
    pub fn pth_root(&self) -> Result<Poly> {
        if !self.is_in_t_pow_p() {
            return Err(Error::Hypothesis("polynomial is not a p-th power".into()));
        }
        let f = &self.field;
        let p = f.characteristic() as usize;
        Ok(Poly::new(
            f,
            self.coeffs.iter().step_by(p).map(|&c| f.pth_root(c)).collect(),
        ))
    }

    /// Substitute t -> t^p (no Frobenius on coefficients).
    pub fn inflate(&self, p: usize) -> Poly {
        let f = &self.field;
        let mut coeffs = vec![Scalar::ZERO; self.coeffs.len().saturating_sub(1) * p + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * p] = c;
        }
        Poly::new(f, coeffs)
    }

    /// Rabin's test: f of degree n is irreducible iff t^{q^n} ≡ t (mod f)
    /// and gcd(t^{q^{n/r}} - t, f) = 1 for every prime r | n.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let f = self.monic();
        let q = self.field.order() as u128;
        let t = Poly::t(&self.field);
        // t^{q^i} mod f for i = 0..=n
        let mut frob = Vec::with_capacity(n + 1);
        let mut cur = t.rem(&f);
        frob.push(cur.clone());
        for _ in 0..n {
            cur = cur.pow_mod(q, &f);
            frob.push(cur.clone());
        }
        if frob[n] != t.rem(&f) {
            return false;
        }
        prime_divisors(n).into_iter().all(|r| {
            let g = (&frob[n / r] - &t).gcd(&f);
            g.is_one()
        })
    }

    /// Canonical order: by degree, then coefficient-wise from the top.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let f = &self.field;
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            let cs = f.fmt_scalar(c);
            let coef = if c == Scalar::ONE && i > 0 {
                String::new()
            } else if cs.contains('+') && i > 0 {
                format!("({cs})")
            } else {
                cs
            };
            match i {
                0 => write!(out, "{coef}")?,
                1 => write!(out, "{coef}t")?,
                _ => write!(out, "{coef}t^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![Scalar::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn division_identity() {
        let f = make_field(5, 2).unwrap();
        let a = Poly::from_ints(&f, &[1, 2, 3, 4, 1, 2]);
        let b = Poly::from_ints(&f, &[3, 0, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn gcd_and_lcm() {
        let f = make_field(7, 1).unwrap();
        let a = &Poly::from_ints(&f, &[-1, 1]) * &Poly::from_ints(&f, &[-2, 1]);
        let b = &Poly::from_ints(&f, &[-1, 1]) * &Poly::from_ints(&f, &[-3, 1]);
        assert_eq!(a.gcd(&b), Poly::from_ints(&f, &[-1, 1]));
        assert_eq!(a.lcm(&b).degree(), Some(3));
    }

    #[test]
    fn irreducibility() {
        let f2 = make_field(2, 1).unwrap();
        assert!(Poly::from_ints(&f2, &[1, 1, 1]).is_irreducible());
        assert!(!Poly::from_ints(&f2, &[1, 0, 1]).is_irreducible());
        let f5 = make_field(5, 1).unwrap();
        assert!(!Poly::from_ints(&f5, &[1, 0, 1]).is_irreducible());
        assert!(Poly::from_ints(&f5, &[2, 0, 1]).is_irreducible());
        // t^4 + t + 1 is irreducible over F_2 but t^4 + t^2 + 1 = (t^2+t+1)^2 is not
        assert!(Poly::from_ints(&f2, &[1, 1, 0, 0, 1]).is_irreducible());
        assert!(!Poly::from_ints(&f2, &[1, 0, 1, 0, 1]).is_irreducible());
    }

    #[test]
    fn pth_root_of_frobenius_image() {
        let f = make_field(3, 2).unwrap();
        let w = f.element_outside_prime_field().unwrap();
        let h = Poly::new(&f, vec![w, Scalar::ONE, f.from_int(2)]);
        let g = h.pow(3);
        assert!(g.is_in_t_pow_p());
        assert_eq!(g.pth_root().unwrap(), h);
    }

    #[test]
    fn display() {
        let f = make_field(5, 1).unwrap();
        assert_eq!(Poly::from_ints(&f, &[4, 0, 1]).to_string(), "t^2 + 4");
    }
}

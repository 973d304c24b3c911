//! Factorization of univariate polynomials over GF(q): squarefree
//! decomposition, distinct-degree splitting, then Cantor–Zassenhaus
//! equal-degree splitting driven by a seeded RNG.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Poly;
use crate::error::{Error, Result};
use crate::field::Scalar;

/// Seed used by [`Poly::factor`].
pub const DEFAULT_SEED: u64 = 0;

impl Poly {
    /// Monic irreducible factors with multiplicities, in canonical order.
    pub fn factor(&self) -> Result<Vec<(Poly, usize)>> {
        self.factor_seeded(DEFAULT_SEED)
    }

    pub fn factor_seeded(&self, seed: u64) -> Result<Vec<(Poly, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        for (sqf, mult) in squarefree_decomposition(&self.monic()) {
            for (block, d) in distinct_degree(&sqf) {
                for g in equal_degree(&block, d, &mut rng) {
                    out.push((g, mult));
                }
            }
        }
        out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        Ok(out)
    }

    /// Roots in the coefficient field, ascending and without repetition.
    pub fn roots(&self) -> Result<Vec<Scalar>> {
        let f = self.field().clone();
        let mut roots: Vec<Scalar> = self
            .factor()?
            .into_iter()
            .filter(|(g, _)| g.degree() == Some(1))
            .map(|(g, _)| f.neg(g.coeff(0)))
            .collect();
        roots.sort();
        Ok(roots)
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> Result<Poly> {
        let fs = self.factor()?;
        Ok(fs
            .iter()
            .fold(Poly::one(self.field()), |acc, (g, _)| &acc * g))
    }
}

/// f = Π g_i^{i} with the g_i squarefree and pairwise coprime; f monic.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, usize)> {
    let p = f.field().characteristic() as usize;
    let mut out: Vec<(Poly, usize)> = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        // f = g(t^p) = (root of g)^p
        let root = f.pth_root().expect("zero derivative implies p-th power");
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * p));
        }
        return merge(out);
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w).expect("gcd divides");
        i += 1;
    }
    if !c.is_one() {
        let root = c.pth_root().expect("remaining cofactor is a p-th power");
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * p));
        }
    }
    merge(out)
}

// Factors coming from different branches are coprime except when the same
// multiplicity shows up twice; fold those together.
fn merge(mut parts: Vec<(Poly, usize)>) -> Vec<(Poly, usize)> {
    parts.sort_by_key(|(_, m)| *m);
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (g, m) in parts {
        match out.last_mut() {
            Some((h, mm)) if *mm == m => *h = &*h * &g,
            _ => out.push((g, m)),
        }
    }
    out
}

/// Splits a monic squarefree f into (product of all degree-d factors, d).
pub fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let q = field.order() as u128;
    let t = Poly::t(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = t.rem(&rest);
    let mut d = 0;
    while rest.degree().unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > rest.degree().unwrap() {
            out.push((rest.clone(), rest.degree().unwrap()));
            break;
        }
        h = h.pow_mod(q, &rest);
        let g = (&h - &t).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    out
}

/// Splits a monic squarefree product of degree-d irreducibles.
pub fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field().clone();
    let q = field.order() as u128;
    loop {
        let a = Poly::new(&field, (0..n).map(|_| field.random(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut g = a.gcd(f);
        if g.is_one() {
            let b = if field.characteristic() == 2 {
                // trace map a + a^2 + ... + a^{2^{kd-1}}
                let mut acc = a.rem(f);
                let mut cur = acc.clone();
                for _ in 1..field.degree() * d {
                    cur = cur.pow_mod(2, f);
                    acc = &acc + &cur;
                }
                acc
            } else {
                // a^{(q^d - 1)/2} = (a^{1 + q + ... + q^{d-1}})^{(q-1)/2}
                let mut norm = a.rem(f);
                let mut cur = norm.clone();
                for _ in 1..d {
                    cur = cur.pow_mod(q, f);
                    norm = (&norm * &cur).rem(f);
                }
                &norm.pow_mod((q - 1) / 2, f) - &Poly::one(&field)
            };
            g = b.gcd(f);
        }
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let h = f.div_exact(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

//! Finite fields GF(p^k).
//!
//! An element of GF(p^k) = F_p[t]/(f) is the residue class of a polynomial
//! `c_0 + c_1 t + ... + c_{k-1} t^{k-1}`. It is stored packed into a single
//! integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`, so [`Scalar`] is `Copy` and
//! the canonical order on elements is the integer order of that packing.
//!
//! Fields of order at most 2^16 carry log/antilog and Zech tables; larger
//! fields fall back to schoolbook polynomial arithmetic on the digits.
//!
//! Fields are interned per `(p, k)`: [`make_field`] always returns the same
//! handle (with the lexicographically least irreducible modulus).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Poly;

const TABLE_LIMIT: u64 = 1 << 16;
const MAX_ORDER: u128 = 1 << 62;
const MAX_PRIME: u64 = 1 << 31;
const MAXK: usize = 64;
const NO_LOG: u32 = u32::MAX;

/// An element of some [`FiniteField`]. Meaningless without its field.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(u64);

impl Scalar {
    pub const ZERO: Scalar = Scalar(0);
    pub const ONE: Scalar = Scalar(1);

    /// Position of the element in the canonical enumeration of its field.
    pub fn index(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    /// exp[i] = g^i for i in 0..2(q-1)
    exp: Vec<u32>,
    log: Vec<u32>,
    /// zech[d] = log(1 + g^d), or NO_LOG when 1 + g^d = 0
    zech: Vec<u32>,
}

struct FieldInner {
    p: u64,
    k: usize,
    q: u64,
    modulus: Vec<u64>,
    pow_p: Vec<u64>,
    tables: Option<Tables>,
}

/// Descriptor of GF(p^k); cheap to clone.
#[derive(Clone)]
pub struct FiniteField(Arc<FieldInner>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "GF({}^{}) mod {:?}", self.0.p, self.0.k, self.0.modulus)
        }
    }
}

/// Serialized form `{p, k, modulus}` with the modulus low-to-high.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub k: usize,
    pub modulus: Vec<u64>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn field_cache() -> &'static Mutex<HashMap<(u64, usize), FiniteField>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), FiniteField>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// GF(p^k) with the lexicographically least monic irreducible modulus,
/// comparing coefficient lists `[c_0, c_1, ..., c_{k-1}]` from the left.
pub fn make_field(p: u64, k: usize) -> Result<FiniteField> {
    if !is_prime(p) || p >= MAX_PRIME {
        return Err(Error::NotPrime(p));
    }
    if k < 1 {
        return Err(Error::InvalidDegree(k));
    }
    if (p as u128).checked_pow(k as u32).map_or(true, |q| q > MAX_ORDER) {
        return Err(Error::FieldTooLarge { p, k });
    }
    if let Some(f) = field_cache().lock().unwrap().get(&(p, k)) {
        return Ok(f.clone());
    }
    let field = if k == 1 {
        FiniteField::build(p, vec![0, 1])
    } else {
        let modulus = least_irreducible(p, k)?;
        FiniteField::build(p, modulus)
    };
    let mut cache = field_cache().lock().unwrap();
    Ok(cache.entry((p, k)).or_insert(field).clone())
}

fn least_irreducible(p: u64, k: usize) -> Result<Vec<u64>> {
    let fp = make_field(p, 1)?;
    let count = p.pow(k as u32);
    for n in 0..count {
        // c_0 is the most significant digit of n
        let mut coeffs = vec![0u64; k + 1];
        let mut m = n;
        for i in (0..k).rev() {
            coeffs[i] = m % p;
            m /= p;
        }
        coeffs[k] = 1;
        if coeffs[0] == 0 {
            continue;
        }
        let poly = Poly::new(
            &fp,
            coeffs.iter().map(|&c| Scalar(c)).collect(),
        );
        if poly.is_irreducible() {
            return Ok(coeffs);
        }
    }
    Err(Error::Invariant(format!("no irreducible of degree {k} over F_{p}")))
}

impl FiniteField {
    fn build(p: u64, modulus: Vec<u64>) -> FiniteField {
        let k = modulus.len() - 1;
        let q = p.pow(k as u32);
        let pow_p = (0..k).map(|i| p.pow(i as u32)).collect();
        let mut inner = FieldInner {
            p,
            k,
            q,
            modulus,
            pow_p,
            tables: None,
        };
        if k > 1 && q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        FiniteField(Arc::new(inner))
    }

    /// Field with an explicitly given monic irreducible modulus.
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<FiniteField> {
        let k = modulus.len().checked_sub(1).ok_or(Error::InvalidDegree(0))?;
        let canonical = make_field(p, k.max(1))?;
        if k == 0 {
            return Err(Error::InvalidDegree(0));
        }
        if canonical.modulus() == modulus {
            return Ok(canonical);
        }
        if k == 1 {
            // the prime field is represented independently of its modulus
            return Err(Error::Format(format!(
                "prime field modulus must be [0, 1], got {modulus:?}"
            )));
        }
        if modulus[k] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::Format(format!("modulus {modulus:?} is not monic over F_{p}")));
        }
        let fp = make_field(p, 1)?;
        let poly = Poly::new(&fp, modulus.iter().map(|&c| Scalar(c)).collect());
        if !poly.is_irreducible() {
            return Err(Error::Format(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        Ok(FiniteField::build(p, modulus.to_vec()))
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<FiniteField> {
        if spec.modulus.len() != spec.k + 1 {
            return Err(Error::Format("modulus length must be k + 1".into()));
        }
        FiniteField::with_modulus(spec.p, &spec.modulus)
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.0.p,
            k: self.0.k,
            modulus: self.0.modulus.clone(),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.k
    }

    pub fn order(&self) -> u64 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    pub fn zero(&self) -> Scalar {
        Scalar::ZERO
    }

    pub fn one(&self) -> Scalar {
        Scalar::ONE
    }

    /// Image of an integer under Z -> F_p -> F.
    pub fn from_int(&self, n: i64) -> Scalar {
        Scalar(n.rem_euclid(self.0.p as i64) as u64)
    }

    /// Element with the given canonical index.
    pub fn element(&self, index: u64) -> Result<Scalar> {
        if index >= self.0.q {
            return Err(Error::InvalidScalar(format!("index {index} outside {self:?}")));
        }
        Ok(Scalar(index))
    }

    /// Element from its coefficient list (low to high, at most k entries).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Scalar> {
        if coeffs.len() > self.0.k || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(Error::InvalidScalar(format!(
                "{coeffs:?} is not a coefficient list over {self:?}"
            )));
        }
        Ok(Scalar(
            coeffs.iter().zip(&self.0.pow_p).map(|(c, w)| c * w).sum(),
        ))
    }

    /// Coefficient list of length k, low to high.
    pub fn coeffs(&self, s: Scalar) -> Vec<u64> {
        let mut out = vec![0; self.0.k];
        self.decode(s.0, &mut out);
        out
    }

    /// Every element, in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Scalar> {
        (0..self.0.q).map(Scalar)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        Scalar(rng.gen_range(0..self.0.q))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        Scalar(rng.gen_range(1..self.0.q))
    }

    pub fn in_prime_field(&self, s: Scalar) -> bool {
        s.0 < self.0.p
    }

    /// The residue class of t, which lies outside F_p whenever k >= 2.
    pub fn element_outside_prime_field(&self) -> Result<Scalar> {
        if self.0.k < 2 {
            return Err(Error::PrimeFieldOnly(self.0.p));
        }
        Ok(Scalar(self.0.p))
    }

    fn decode(&self, mut s: u64, out: &mut [u64]) {
        let p = self.0.p;
        for d in out.iter_mut().take(self.0.k) {
            *d = s % p;
            s /= p;
        }
    }

    fn encode(&self, digits: &[u64]) -> u64 {
        digits
            .iter()
            .take(self.0.k)
            .zip(&self.0.pow_p)
            .map(|(c, w)| c * w)
            .sum()
    }

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        let f = &*self.0;
        if f.k == 1 {
            let s = a.0 + b.0;
            return Scalar(if s >= f.p { s - f.p } else { s });
        }
        if f.p == 2 {
            return Scalar(a.0 ^ b.0);
        }
        if let Some(t) = &f.tables {
            if a.0 == 0 {
                return b;
            }
            if b.0 == 0 {
                return a;
            }
            let n = f.q as u32 - 1;
            let la = t.log[a.0 as usize];
            let lb = t.log[b.0 as usize];
            let d = if lb >= la { lb - la } else { lb + n - la };
            let z = t.zech[d as usize];
            if z == NO_LOG {
                return Scalar(0);
            }
            return Scalar(t.exp[(la + z) as usize] as u64);
        }
        self.add_digits(a.0, b.0)
    }

    fn add_digits(&self, a: u64, b: u64) -> Scalar {
        let f = &*self.0;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        for w in &f.pow_p {
            let s = (a % f.p + b % f.p) % f.p;
            out += s * w;
            a /= f.p;
            b /= f.p;
        }
        Scalar(out)
    }

    #[inline]
    pub fn neg(&self, a: Scalar) -> Scalar {
        let f = &*self.0;
        if a.0 == 0 || f.p == 2 {
            return a;
        }
        if f.k == 1 {
            return Scalar(f.p - a.0);
        }
        if let Some(t) = &f.tables {
            let half = (f.q as u32 - 1) / 2;
            return Scalar(t.exp[(t.log[a.0 as usize] + half) as usize] as u64);
        }
        let mut digits = [0u64; MAXK];
        self.decode(a.0, &mut digits);
        for d in digits.iter_mut().take(f.k) {
            *d = (f.p - *d) % f.p;
        }
        Scalar(self.encode(&digits))
    }

    #[inline]
    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        let f = &*self.0;
        if a.0 == 0 || b.0 == 0 {
            return Scalar(0);
        }
        if f.k == 1 {
            return Scalar(a.0 * b.0 % f.p);
        }
        if let Some(t) = &f.tables {
            let l = t.log[a.0 as usize] + t.log[b.0 as usize];
            return Scalar(t.exp[l as usize] as u64);
        }
        Scalar(self.mul_digits(a.0, b.0))
    }

    fn mul_digits(&self, a: u64, b: u64) -> u64 {
        let f = &*self.0;
        let (p, k) = (f.p, f.k);
        let mut da = [0u64; MAXK];
        let mut db = [0u64; MAXK];
        self.decode(a, &mut da);
        self.decode(b, &mut db);
        let mut prod = [0u64; 2 * MAXK];
        for i in 0..k {
            if da[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            let neg = p - c;
            for i in 0..k {
                prod[d - k + i] = (prod[d - k + i] + neg * f.modulus[i]) % p;
            }
            prod[d] = 0;
        }
        self.encode(&prod[..k])
    }

    pub fn pow(&self, a: Scalar, mut e: u128) -> Scalar {
        let mut base = a;
        let mut acc = Scalar::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn try_inv(&self, a: Scalar) -> Option<Scalar> {
        if a.0 == 0 {
            return None;
        }
        let f = &*self.0;
        if let Some(t) = &f.tables {
            let n = f.q as u32 - 1;
            let l = t.log[a.0 as usize];
            return Some(Scalar(t.exp[((n - l) % n) as usize] as u64));
        }
        Some(self.pow(a, f.q as u128 - 2))
    }

    /// Multiplicative inverse.
    ///
    /// # Panics
    /// If `a` is zero.
    pub fn inv(&self, a: Scalar) -> Scalar {
        self.try_inv(a).expect("inverse of zero")
    }

    pub fn div(&self, a: Scalar, b: Scalar) -> Scalar {
        self.mul(a, self.inv(b))
    }

    /// a ↦ a^p
    pub fn frobenius(&self, a: Scalar) -> Scalar {
        self.pow(a, self.0.p as u128)
    }

    /// The unique b with b^p = a.
    pub fn pth_root(&self, a: Scalar) -> Scalar {
        self.pow(a, (self.0.q / self.0.p) as u128)
    }

    /// Human-readable form; `w` denotes the class of t.
    pub fn fmt_scalar(&self, s: Scalar) -> String {
        if self.0.k == 1 {
            return s.0.to_string();
        }
        let c = self.coeffs(s);
        let terms: Vec<String> = c
            .iter()
            .enumerate()
            .filter(|(_, &ci)| ci != 0)
            .map(|(i, &ci)| match (i, ci) {
                (0, _) => ci.to_string(),
                (1, 1) => "w".to_string(),
                (1, _) => format!("{ci}w"),
                (_, 1) => format!("w^{i}"),
                _ => format!("{ci}w^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

fn factor_small(mut n: u64) -> Vec<u64> {
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

fn build_tables(inner: &FieldInner) -> Tables {
    // Temporary table-free handle for the slow path.
    let slow = FiniteField(Arc::new(FieldInner {
        p: inner.p,
        k: inner.k,
        q: inner.q,
        modulus: inner.modulus.clone(),
        pow_p: inner.pow_p.clone(),
        tables: None,
    }));
    let q = inner.q;
    let n = q - 1;
    let primes = factor_small(n);
    let g = (2..q)
        .map(Scalar)
        .find(|&g| primes.iter().all(|&r| slow.pow(g, (n / r) as u128) != Scalar::ONE))
        .expect("multiplicative group is cyclic");
    let mut exp = vec![0u32; 2 * n as usize];
    let mut log = vec![NO_LOG; q as usize];
    let mut cur = Scalar::ONE;
    for i in 0..n as usize {
        exp[i] = cur.0 as u32;
        exp[i + n as usize] = cur.0 as u32;
        log[cur.0 as usize] = i as u32;
        cur = slow.mul(cur, g);
    }
    let zech = (0..n as usize)
        .map(|d| {
            let s = slow.add_digits(1, exp[d] as u64);
            if s.0 == 0 {
                NO_LOG
            } else {
                log[s.0 as usize]
            }
        })
        .collect();
    Tables { exp, log, zech }
}

// ---------------------------------------------------------------------------
// Embeddings
// ---------------------------------------------------------------------------

/// A field homomorphism GF(p^k) -> GF(p^{km}), determined by the image of t.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: FiniteField,
    target: FiniteField,
    /// images of t^0, ..., t^{k-1}
    powers: Vec<Scalar>,
}

type EmbedKey = (u64, Vec<u64>, Vec<u64>);

fn root_cache() -> &'static Mutex<HashMap<EmbedKey, Scalar>> {
    static CACHE: OnceLock<Mutex<HashMap<EmbedKey, Scalar>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Embedding {
    pub fn new(source: &FiniteField, target: &FiniteField) -> Result<Embedding> {
        let (p, k, km) = (source.characteristic(), source.degree(), target.degree());
        if target.characteristic() != p || km % k != 0 {
            return Err(Error::NoEmbedding { p, from: k, to: km });
        }
        let root = if k == 1 {
            Scalar::ZERO
        } else if source == target {
            Scalar(p)
        } else {
            let key = (p, source.modulus().to_vec(), target.modulus().to_vec());
            let cached = root_cache().lock().unwrap().get(&key).copied();
            match cached {
                Some(r) => r,
                None => {
                    let f = Poly::new(
                        target,
                        source.modulus().iter().map(|&c| target.from_int(c as i64)).collect(),
                    );
                    let r = f
                        .roots()?
                        .into_iter()
                        .min()
                        .ok_or(Error::NoEmbedding { p, from: k, to: km })?;
                    root_cache().lock().unwrap().insert(key, r);
                    r
                }
            }
        };
        let mut powers = Vec::with_capacity(k);
        let mut cur = Scalar::ONE;
        for _ in 0..k {
            powers.push(cur);
            cur = target.mul(cur, root);
        }
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            powers,
        })
    }

    pub fn source(&self) -> &FiniteField {
        &self.source
    }

    pub fn target(&self) -> &FiniteField {
        &self.target
    }

    pub fn apply(&self, s: Scalar) -> Scalar {
        if self.source.is_prime_field() {
            return s;
        }
        let t = &self.target;
        self.source
            .coeffs(s)
            .into_iter()
            .zip(&self.powers)
            .fold(Scalar::ZERO, |acc, (c, &w)| {
                t.add(acc, t.mul(Scalar(c), w))
            })
    }
}

/// Image of `s` under the canonical embedding `source -> target`.
pub fn embed_scalar(s: Scalar, source: &FiniteField, target: &FiniteField) -> Result<Scalar> {
    Ok(Embedding::new(source, target)?.apply(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fields() -> Vec<FiniteField> {
        [(2, 1), (5, 1), (2, 2), (3, 2), (5, 2), (2, 4), (3, 3), (7, 2), (5, 4), (3, 11)]
            .iter()
            .map(|&(p, k)| make_field(p, k).unwrap())
            .collect()
    }

    #[test]
    fn prime_field_and_gf4() {
        let f5 = make_field(5, 1).unwrap();
        assert!(f5.is_prime_field());
        assert_eq!(f5.order(), 5);
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn gf9_modulus_is_least_by_enumeration() {
        // Enumerate monic quadratics t^2 + c1 t + c0 in the order (c0, c1)
        // and take the first one without a root in F_3.
        let mut expected = None;
        'outer: for c0 in 0..3u64 {
            for c1 in 0..3u64 {
                if (0..3u64).all(|r| (r * r + c1 * r + c0) % 3 != 0) {
                    expected = Some(vec![c0, c1, 1]);
                    break 'outer;
                }
            }
        }
        assert_eq!(make_field(3, 2).unwrap().modulus(), expected.unwrap().as_slice());
    }

    #[test]
    fn make_field_errors() {
        assert_eq!(make_field(6, 1).unwrap_err(), Error::NotPrime(6));
        assert_eq!(make_field(5, 0).unwrap_err(), Error::InvalidDegree(0));
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for f in fields() {
            for _ in 0..200 {
                let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.add(a, f.neg(a)), Scalar::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a)), Scalar::ONE);
                }
                let p = f.characteristic() as u128;
                assert_eq!(
                    f.pow(f.add(a, b), p),
                    f.add(f.pow(a, p), f.pow(b, p)),
                    "Frobenius additivity over {f:?}"
                );
                assert_eq!(f.frobenius(f.pth_root(a)), a);
            }
        }
    }

    #[test]
    fn table_and_digit_paths_agree() {
        let f = make_field(3, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let (a, b) = (f.random(&mut rng), f.random(&mut rng));
            assert_eq!(f.mul(a, b).0, f.mul_digits(a.0, b.0));
            assert_eq!(f.add(a, b), f.add_digits(a.0, b.0));
        }
    }

    #[test]
    fn outside_prime_field() {
        let f9 = make_field(3, 2).unwrap();
        let t = f9.element_outside_prime_field().unwrap();
        assert_eq!(f9.coeffs(t), vec![0, 1]);
        assert!(!f9.in_prime_field(t));
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(f4.coeffs(f4.element_outside_prime_field().unwrap()), vec![0, 1]);
        assert_eq!(
            make_field(7, 1).unwrap().element_outside_prime_field(),
            Err(Error::PrimeFieldOnly(7))
        );
    }

    #[test]
    fn embeddings_fix_prime_field_and_preserve_order() {
        let f3 = make_field(3, 1).unwrap();
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(embed_scalar(Scalar::ONE, &f3, &f9).unwrap(), Scalar::ONE);
        let f4 = make_field(2, 2).unwrap();
        let f16 = make_field(2, 4).unwrap();
        assert_eq!(embed_scalar(Scalar::ZERO, &f4, &f16).unwrap(), Scalar::ZERO);

        let f5 = make_field(5, 1).unwrap();
        let f25 = make_field(5, 2).unwrap();
        let g = f5.from_int(2);
        let e = embed_scalar(g, &f5, &f25).unwrap();
        let order = (1..=24u128).find(|&n| f25.pow(e, n) == Scalar::ONE).unwrap();
        assert_eq!(order, 4);

        assert_eq!(
            Embedding::new(&f4, &make_field(2, 3).unwrap()).unwrap_err(),
            Error::NoEmbedding { p: 2, from: 2, to: 3 }
        );
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, k, m) in [(2, 2, 3), (3, 2, 2), (5, 2, 2), (3, 1, 3), (2, 3, 2)] {
            let src = make_field(p, k).unwrap();
            let tgt = make_field(p, k * m).unwrap();
            let e = Embedding::new(&src, &tgt).unwrap();
            for _ in 0..100 {
                let (a, b) = (src.random(&mut rng), src.random(&mut rng));
                assert_eq!(e.apply(src.add(a, b)), tgt.add(e.apply(a), e.apply(b)));
                assert_eq!(e.apply(src.mul(a, b)), tgt.mul(e.apply(a), e.apply(b)));
            }
        }
    }

    #[test]
    fn spec_roundtrip() {
        let f = make_field(5, 2).unwrap();
        assert_eq!(FiniteField::from_spec(&f.spec()).unwrap(), f);
        let bad = FieldSpec { p: 5, k: 2, modulus: vec![1, 0, 1] };
        assert!(FiniteField::from_spec(&bad).is_err());
    }
}

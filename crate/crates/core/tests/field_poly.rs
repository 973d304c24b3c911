//! Field and polynomial arithmetic against schoolbook oracles.

use modlie::{embed_scalar, make_field, Embedding, FiniteField, Poly, Scalar};
use proptest::prelude::*;

/// Multiplication of coefficient vectors modulo the field's modulus, done
/// by hand on integers mod p.
fn oracle_mul(f: &FiniteField, a: Scalar, b: Scalar) -> Scalar {
    let p = f.characteristic();
    let k = f.degree();
    let (ca, cb) = (f.coeffs(a), f.coeffs(b));
    let mut prod = vec![0u64; 2 * k];
    for (i, &x) in ca.iter().enumerate() {
        for (j, &y) in cb.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let m = f.modulus();
    for d in (k..2 * k).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        // monic modulus: t^k = −Σ m_i t^i
        for i in 0..k {
            prod[d - k + i] = (prod[d - k + i] + (p - c) * m[i]) % p;
        }
        prod[d] = 0;
    }
    f.from_coeffs(&prod[..k]).unwrap()
}

fn fields() -> Vec<FiniteField> {
    [(2, 1), (2, 4), (3, 3), (5, 2), (7, 1), (2, 17), (3, 11)]
        .into_iter()
        .map(|(p, k)| make_field(p, k).unwrap())
        .collect()
}

proptest! {
    #[test]
    fn multiplication_matches_schoolbook(fi in 0usize..7, a in any::<u64>(), b in any::<u64>()) {
        let f = &fields()[fi];
        let (a, b) = (f.element(a % f.order()).unwrap(), f.element(b % f.order()).unwrap());
        prop_assert_eq!(f.mul(a, b), oracle_mul(f, a, b));
    }

    #[test]
    fn field_axioms(fi in 0usize..7, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = &fields()[fi];
        let q = f.order();
        let (a, b, c) = (f.element(a % q).unwrap(), f.element(b % q).unwrap(), f.element(c % q).unwrap());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(f.sub(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a)), f.one());
            prop_assert_eq!(f.pow(a, (q - 1) as u128), f.one());
        }
        // Frobenius is additive and multiplicative, and pth_root undoes it
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.pth_root(f.frobenius(c)), c);
    }

    #[test]
    fn embedding_is_a_homomorphism(a in 0u64..9, b in 0u64..9) {
        let (s, t) = (make_field(3, 2).unwrap(), make_field(3, 6).unwrap());
        let e = Embedding::new(&s, &t).unwrap();
        let (a, b) = (s.element(a).unwrap(), s.element(b).unwrap());
        prop_assert_eq!(e.apply(s.mul(a, b)), t.mul(e.apply(a), e.apply(b)));
        prop_assert_eq!(e.apply(s.add(a, b)), t.add(e.apply(a), e.apply(b)));
        prop_assert_eq!(embed_scalar(a, &s, &t).unwrap(), e.apply(a));
    }
}

#[test]
fn factor_then_expand_is_identity() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for trial in 0..200 {
        let f = &fields()[trial % 5];
        let deg = rng.gen_range(1..=12);
        let mut c: Vec<Scalar> = (0..deg).map(|_| f.random(&mut rng)).collect();
        c.push(f.one());
        let g = Poly::new(f, c);
        let fs = g.factor().unwrap();
        let back = fs.iter().fold(Poly::one(f), |acc, (h, e)| &acc * &h.pow(*e as u64));
        assert_eq!(back, g, "trial {trial}");
        for (h, _) in &fs {
            assert!(h.is_monic() && h.is_irreducible(), "{h} over GF({})", f.order());
        }
        let sorted = fs.windows(2).all(|w| w[0].0.canonical_cmp(&w[1].0).is_lt());
        assert!(sorted);
    }
}

#[test]
fn char_p_derivative_vanishing() {
    // t^6 + 2 = (t^2 + 2)^3 over F_3 has zero derivative
    let f = make_field(3, 1).unwrap();
    let g = Poly::from_ints(&f, &[2, 0, 0, 0, 0, 0, 1]);
    assert!(g.derivative().is_zero());
    let fs = g.factor().unwrap();
    let back = fs.iter().fold(Poly::one(&f), |acc, (h, e)| &acc * &h.pow(*e as u64));
    assert_eq!(back, g);
    assert!(fs.iter().all(|(_, e)| *e % 3 == 0));
}

#[test]
fn elements_outside_the_prime_field() {
    assert!(make_field(5, 1).unwrap().element_outside_prime_field().is_err());
    let f = make_field(5, 2).unwrap();
    let w = f.element_outside_prime_field().unwrap();
    assert!(!f.in_prime_field(w));
    assert_eq!(f.elements().filter(|&x| f.in_prime_field(x)).count(), 5);
}

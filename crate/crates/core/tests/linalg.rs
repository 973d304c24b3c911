//! Exact linear algebra: echelon canonicity, minimal polynomials, cyclic
//! decompositions and multiplicative orders, checked against brute force.

use modlie::linalg::{cyclic_decomposition, krylov, minpoly, mult_order, primary_subspace, relative_minpoly};
use modlie::{make_field, FiniteField, Mat, Poly, Subspace};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_field(i: usize) -> FiniteField {
    let (p, k) = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)][i];
    make_field(p, k).unwrap()
}

/// Smallest e ≥ 1 with m^e = I, by repeated multiplication.
fn brute_order(m: &Mat) -> u128 {
    let mut cur = m.clone();
    let mut e = 1;
    while !cur.is_identity() {
        cur = cur.mul(m);
        e += 1;
    }
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity_and_canonical_spans(fi in 0usize..5, n in 1usize..7, seed in any::<u64>()) {
        let f = small_field(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = Mat::random(&f, n, n + 1, &mut rng);
        prop_assert_eq!(m.rank() + m.kernel().dim(), n + 1);
        for v in m.kernel().basis() {
            prop_assert!(m.mul_vec(v).iter().all(|c| c.is_zero()));
        }
        // the same space spanned in another order has the same echelon basis
        let rows = m.row_vectors();
        let mut rev = rows.clone();
        rev.reverse();
        prop_assert_eq!(Subspace::span(&f, n + 1, &rows), Subspace::span(&f, n + 1, &rev));
    }

    #[test]
    fn minpoly_is_minimal(fi in 0usize..5, n in 1usize..7, seed in any::<u64>()) {
        let f = small_field(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = Mat::random(&f, n, n, &mut rng);
        let q = minpoly(&x);
        prop_assert!(x.eval_poly(&q).is_zero());
        for (g, _) in q.factor().unwrap() {
            let smaller = q.div_exact(&g).unwrap();
            prop_assert!(!x.eval_poly(&smaller).is_zero());
        }
        let v: Vec<_> = (0..n).map(|_| f.random(&mut rng)).collect();
        let r = relative_minpoly(&x, &v);
        prop_assert!(r.divides(&q));
        prop_assert!(x.apply_poly(&r, &v).iter().all(|c| c.is_zero()));
    }

    #[test]
    fn cyclic_decomposition_is_a_direct_sum(fi in 0usize..5, n in 1usize..7, seed in any::<u64>()) {
        let f = small_field(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = Mat::random(&f, n, n, &mut rng);
        let parts = cyclic_decomposition(&x);
        let mut total = Subspace::zero(&f, n);
        let mut dims = 0;
        for (i, (v, q)) in parts.iter().enumerate() {
            let (seq, r) = krylov(&x, v);
            prop_assert_eq!(&r, q);
            dims += seq.len();
            total = total.sum(&Subspace::span(&f, n, &seq));
            if i > 0 {
                prop_assert!(q.divides(&parts[i - 1].1));
            }
        }
        prop_assert_eq!(dims, n);
        prop_assert!(total.is_full());
        prop_assert_eq!(&parts[0].1, &minpoly(&x));
    }

    #[test]
    fn mult_order_matches_brute_force(fi in 0usize..5, n in 1usize..5, seed in any::<u64>()) {
        let f = small_field(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = Mat::random(&f, n, n, &mut rng);
        prop_assume!(x.is_invertible());
        let o = mult_order(&x).unwrap();
        prop_assert_eq!(o.order(), brute_order(&x));
        prop_assert!(o.n % f.characteristic() as u128 != 0);
    }
}

#[test]
fn primary_subspace_examples() {
    let f = make_field(5, 1).unwrap();
    let x = Mat::diag(&f, &[f.from_int(1), f.from_int(1), f.from_int(2)]);
    assert_eq!(primary_subspace(&x, &Poly::from_ints(&f, &[-1, 1])).unwrap().dim(), 2);
    assert!(primary_subspace(&x, &Poly::from_ints(&f, &[-3, 1])).unwrap().is_zero());
    assert!(primary_subspace(&x, &Poly::one(&f)).is_err());
    let shift = Mat::companion(&Poly::from_ints(&f, &[-1, 0, 0, 0, 0, 1]));
    assert!(primary_subspace(&shift, &Poly::from_ints(&f, &[-1, 1])).unwrap().is_full());
}

#[test]
fn companion_has_the_prescribed_minpoly() {
    let f = make_field(3, 2).unwrap();
    let q = Poly::from_ints(&f, &[2, 0, 0, 1, 0, 0, 1]);
    let c = Mat::companion(&q);
    assert_eq!(minpoly(&c), q);
    assert_eq!(cyclic_decomposition(&c).len(), 1);
}

#[test]
fn unipotent_orders_are_powers_of_p() {
    let f = make_field(3, 1).unwrap();
    let j = Mat::from_ints(&f, &[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1], &[0, 0, 0, 1]]);
    let o = mult_order(&j).unwrap();
    assert_eq!((o.n, o.t), (1, 2));
    assert_eq!(o.order(), brute_order(&j));
}

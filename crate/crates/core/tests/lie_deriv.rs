//! Lie algebras and their derivations against brute-force enumeration over
//! small fields.

use modlie::deriv::{
    compatible_pair_space, derivation_from_grading, derivation_space, graded_engel_check, grading_from_derivation,
    is_derivation, normalize_derivation, Derivation, EngelReport, Grading,
};
use modlie::linalg::unit;
use modlie::pcyclic::build_derivation;
use modlie::zoo;
use modlie::{gl_subalgebra_generated, make_field, FiniteField, LieAlg, Mat, Poly, Scalar, Subspace};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn zero(v: &[Scalar]) -> bool {
    v.iter().all(|c| c.is_zero())
}

/// Every vector of F_2^n.
fn all_vectors_gf2(f: &FiniteField, n: usize) -> Vec<Vec<Scalar>> {
    (0..1u32 << n)
        .map(|bits| (0..n).map(|i| if bits >> i & 1 == 1 { f.one() } else { f.zero() }).collect())
        .collect()
}

/// Counts n×n matrices over F_2 satisfying the Leibniz rule on basis pairs.
fn count_derivations_gf2(l: &LieAlg) -> usize {
    let f = l.field();
    let n = l.dim();
    let e = |i| unit(n, i);
    (0..1u64 << (n * n))
        .filter(|bits| {
            let d = Mat::from_fn(f, n, n, |r, c| if bits >> (r * n + c) & 1 == 1 { f.one() } else { f.zero() });
            (0..n).all(|i| {
                (0..n).all(|j| {
                    let lhs = d.mul_vec(&l.bracket(&e(i), &e(j)));
                    let rhs: Vec<Scalar> = l
                        .bracket(&d.col(i), &e(j))
                        .iter()
                        .zip(l.bracket(&e(i), &d.col(j)))
                        .map(|(&a, b)| f.add(a, b))
                        .collect();
                    lhs == rhs
                })
            })
        })
        .count()
}

/// A random subalgebra of upper triangular 3×3 matrices over F_2.
fn random_triangular_algebra(rng: &mut ChaCha8Rng) -> LieAlg {
    let f = make_field(2, 1).unwrap();
    let gens: Vec<Mat> = (0..2)
        .map(|_| Mat::from_fn(&f, 3, 3, |r, c| if r <= c && rng.gen_bool(0.5) { f.one() } else { f.zero() }))
        .collect();
    gl_subalgebra_generated(&gens).unwrap().0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jacobi_and_series_on_built_algebras(p in prop::sample::select(vec![2u64, 3, 5]), seed in any::<u64>()) {
        let f = make_field(p, if p == 2 { 3 } else { 2 }).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = f.random_nonzero(&mut rng);
        let q = Poly::new(&f, (0..=p as usize).map(|i| if i == 0 { f.neg(c) } else if i == p as usize { f.one() } else { f.zero() }).collect());
        let built = build_derivation(&[q], &f).unwrap();
        let l = &built.algebra;
        let n = l.dim();
        let r: Vec<Vec<Scalar>> = (0..3).map(|_| (0..n).map(|_| f.random(&mut rng)).collect()).collect();
        let (a, b, c) = (&r[0], &r[1], &r[2]);
        let j1 = l.bracket(a, &l.bracket(b, c));
        let j2 = l.bracket(b, &l.bracket(c, a));
        let j3 = l.bracket(c, &l.bracket(a, b));
        let sum: Vec<Scalar> = j1.iter().zip(&j2).zip(&j3).map(|((&x, &y), &z)| f.add(f.add(x, y), z)).collect();
        prop_assert!(zero(&sum));
        prop_assert!(zero(&l.bracket(a, a)));
        // L/L' is abelian and L' is an ideal
        let ld = l.derived_algebra();
        prop_assert!(l.is_ideal(&ld));
        let (quot, _) = l.quotient(&ld).unwrap();
        prop_assert!(quot.is_abelian());
        prop_assert_eq!(l.derived_length(), Some(2));
        prop_assert!(!l.is_nilpotent());
    }

    #[test]
    fn nilpotency_agrees_with_engel(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random_triangular_algebra(&mut rng);
        let f = l.field().clone();
        // Engel: nilpotent iff every ad x is nilpotent
        let engel = all_vectors_gf2(&f, l.dim()).iter().all(|x| l.ad(x).is_nilpotent());
        prop_assert_eq!(l.is_nilpotent(), engel);
        let lc = l.lower_central_series();
        for w in lc.windows(2) {
            prop_assert!(w[0].contains_space(&w[1]));
        }
    }
}

#[test]
fn derivation_space_matches_enumeration() {
    let f = make_field(2, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut algebras = vec![LieAlg::heisenberg(&f), LieAlg::abelian(&f, 2)];
    while algebras.len() < 6 {
        let l = random_triangular_algebra(&mut rng);
        if l.dim() <= 4 {
            algebras.push(l);
        }
    }
    for l in &algebras {
        let basis = derivation_space(l);
        assert_eq!(1usize << basis.len(), count_derivations_gf2(l), "dim {}", l.dim());
        assert!(basis.iter().all(|d| is_derivation(l, d.matrix())));
    }
}

#[test]
fn normalizing_the_cycle_derivation() {
    for (p, k) in [(2, 3), (3, 2), (5, 2)] {
        let f = make_field(p, k).unwrap();
        let ex = zoo::mattarei(&f).unwrap();
        let l = &ex.algebra;
        let x = ex.x();
        let alpha = ex.degrees[0];
        let nd = normalize_derivation(l, &x, &ex.delta).unwrap();
        assert_eq!(nd.t, 0);
        assert_eq!(nd.delta.matrix(), &ex.delta.matrix().scale(f.inv(alpha)));
        // adding an inner derivation ad(v), v ∈ L', keeps δ(x) = x after normalizing
        let v = unit(l.dim(), 1);
        let perturbed = Derivation::new(l, ex.delta.matrix().add(&l.ad(&v))).unwrap();
        let nd = normalize_derivation(l, &x, &perturbed).unwrap();
        assert_eq!(nd.delta.apply(&nd.x), nd.x);
        assert!(is_derivation(&nd.algebra, nd.delta.matrix()));
    }
}

/// Solves [β, C] = αC for (α, β) ∈ F × gl_m by vectorizing with
/// Kronecker products: (I⊗C − Cᵀ⊗I) vec β − vec C · α = 0.
fn compat_dim_kronecker(c: &Mat) -> usize {
    let f = c.field();
    let m = c.rows();
    let cols = m * m + 1;
    let sys = Mat::from_fn(f, m * m, cols, |row, col| {
        let (r, s) = (row / m, row % m);
        if col == m * m {
            return f.neg(c.get(r, s));
        }
        let (i, j) = (col / m, col % m);
        // ([β, C])_{rs} = Σ_j β_{rj} C_{js} − Σ_i C_{ri} β_{is}
        let mut v = f.zero();
        if i == r {
            v = f.add(v, c.get(j, s));
        }
        if j == s {
            v = f.sub(v, c.get(r, i));
        }
        v
    });
    sys.kernel().dim()
}

#[test]
fn compatible_pairs_of_the_cycle() {
    for (p, k) in [(2, 3), (3, 2), (5, 2)] {
        let f = make_field(p, k).unwrap();
        let ex = zoo::mattarei(&f).unwrap();
        let pairs = compatible_pair_space(&ex.rep);
        let c = &ex.rep.matrices()[0];
        assert_eq!(pairs.len(), compat_dim_kronecker(c));
        assert_eq!(pairs.len(), 1 + p as usize);
        assert!(pairs.iter().all(|pr| pr.is_compatible(&ex.rep)));
    }
}

#[test]
fn graded_engel_witness_for_the_cycle_example() {
    let f = make_field(3, 2).unwrap();
    let ex = zoo::mattarei(&f).unwrap();
    let g = grading_from_derivation(&ex.algebra, &ex.delta).unwrap();
    match graded_engel_check(&ex.algebra, &g, 3 * ex.algebra.dim()) {
        EngelReport::Witness { x, y, .. } => {
            let mut w = y.clone();
            for _ in 0..ex.algebra.dim() {
                w = ex.algebra.bracket(&x, &w);
            }
            assert!(!zero(&w));
        }
        other => panic!("expected a witness, got {other:?}"),
    }
    let h = LieAlg::heisenberg(&f);
    let gh = Grading::from_basis_degrees(&h, &[f.one(), f.one(), f.from_int(2)]).unwrap();
    assert_eq!(graded_engel_check(&h, &gh, 4), EngelReport::Engel { n: 2, nilpotent: true });
}

#[test]
fn grading_roundtrip() {
    let f = make_field(5, 2).unwrap();
    let ex = zoo::mattarei(&f).unwrap();
    let g = grading_from_derivation(&ex.algebra, &ex.delta).unwrap();
    let d = derivation_from_grading(&ex.algebra, &g).unwrap();
    assert_eq!(&d, &ex.delta);
    let mut degs = ex.degrees.clone();
    degs.sort_unstable();
    degs.dedup();
    assert_eq!(g.degrees(), degs);
    let total = g.components().iter().fold(Subspace::zero(&f, ex.algebra.dim()), |acc, (_, s)| acc.sum(s));
    assert!(total.is_full());
}

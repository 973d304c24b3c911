//! Fixtures shared by the benchmarks.

use modlie::pcyclic::{build_derivation, Built};
use modlie::{make_field, FiniteField, Mat, Poly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A random n×n matrix over GF(p^k), fixed by the seed.
pub fn random_matrix(p: u64, k: usize, n: usize, seed: u64) -> Mat {
    let f = make_field(p, k).expect("small field");
    Mat::random(&f, n, n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// A random monic polynomial of the given degree.
pub fn random_poly(f: &FiniteField, degree: usize, seed: u64) -> Poly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c: Vec<_> = (0..degree).map(|_| f.random(&mut rng)).collect();
    c.push(f.one());
    Poly::new(f, c)
}

/// ⟨x⟩ ⋉ (I_1 ⊕ … ⊕ I_s), each I_j with minimal polynomial (t^p − j)^e.
pub fn built_algebra(p: u64, k: usize, s: usize, e: usize) -> Built {
    let f = make_field(p, k).expect("small field");
    let pu = p as usize;
    let qs: Vec<Poly> = (1..=s)
        .map(|j| {
            let mut c = vec![f.zero(); pu + 1];
            c[0] = f.neg(f.element(j as u64).expect("index in range"));
            c[pu] = f.one();
            let base = Poly::new(&f, c);
            (1..e).fold(base.clone(), |acc, _| &acc * &base)
        })
        .collect();
    build_derivation(&qs, &f).expect("admissible degrees")
}

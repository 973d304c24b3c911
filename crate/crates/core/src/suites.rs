//! Seeded property suites. Trials run in parallel; each trial draws from its
//! own ChaCha stream (seed, trial index), and reports are merged in trial
//! order, so a run is reproducible from its seed alone.

use crate::deriv::{
    compatible_pair_space, derivation_from_grading, derivation_space, frobenius_power, verify_theorem_1_8,
    CompatPair, Derivation, Grading,
};
use crate::error::{Error, Result};
use crate::field::{make_field, FiniteField, Scalar};
use crate::liealg::{semidirect_sum, LieAlg, Representation};
use crate::linalg::{eigen_decomposition, minpoly, primary_subspace, Mat, Poly, Subspace};
use crate::pcyclic::{build_derivation, xp_decompose};
use crate::pdecomp::{check_invariance, primary_decomposition, restriction};
use crate::zoo::{self, Example, Family};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt;

pub const SUITES: [&str; 10] = [
    "thm1_8",
    "lemma0_9",
    "lemma4_1_16",
    "leibniz",
    "leib",
    "linear05",
    "lemma5_3",
    "primary",
    "roundtrip",
    "thm4_3",
];

/// Knobs shared by the suites; `None` means the suite's default.
#[derive(Clone, Debug, Default)]
pub struct SuiteParams {
    pub seed: u64,
    pub p: Option<u64>,
    pub trials: Option<usize>,
    pub n: Option<usize>,
    pub s: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    pub skipped: usize,
    pub failed: usize,
    /// First failing trial, by index.
    pub counterexample: Option<String>,
    /// Suite-specific key=value facts.
    pub notes: Vec<(String, String)>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn note(&self, key: &str) -> Option<&str> {
        self.notes.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite={}", self.suite)?;
        writeln!(f, "seed={}", self.seed)?;
        writeln!(f, "trials={}", self.trials)?;
        writeln!(f, "passed={}", self.passed)?;
        writeln!(f, "skipped={}", self.skipped)?;
        writeln!(f, "failed={}", self.failed)?;
        for (k, v) in &self.notes {
            writeln!(f, "{k}={v}")?;
        }
        if let Some(c) = &self.counterexample {
            writeln!(f, "counterexample={c}")?;
        }
        write!(f, "verdict={}", if self.ok() { "pass" } else { "fail" })
    }
}

enum Outcome {
    Pass,
    Skip,
    Fail(String),
}

fn rng_for(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn run_trials<F>(suite: &str, seed: u64, trials: usize, body: F) -> SuiteReport
where
    F: Fn(usize, &mut ChaCha8Rng) -> Result<Outcome> + Sync,
{
    let outcomes: Vec<Outcome> = (0..trials)
        .into_par_iter()
        .map(|i| match body(i, &mut rng_for(seed, i)) {
            Ok(o) => o,
            Err(e) => Outcome::Fail(format!("trial {i}: error: {e}")),
        })
        .collect();
    let mut report = SuiteReport {
        suite: suite.to_string(),
        seed,
        trials,
        passed: 0,
        skipped: 0,
        failed: 0,
        counterexample: None,
        notes: Vec::new(),
    };
    for o in outcomes {
        match o {
            Outcome::Pass => report.passed += 1,
            Outcome::Skip => report.skipped += 1,
            Outcome::Fail(msg) => {
                report.failed += 1;
                report.counterexample.get_or_insert(msg);
            }
        }
    }
    report
}

pub fn run_suite(name: &str, params: &SuiteParams) -> Result<SuiteReport> {
    match name {
        "thm1_8" => Ok(thm1_8(params)),
        "lemma0_9" => Ok(lemma0_9(params)),
        "lemma4_1_16" => Ok(lemma4_1_16(params)),
        "leibniz" => Ok(leibniz(params)),
        "leib" => Ok(leib(params)),
        "linear05" => Ok(linear05(params)),
        "lemma5_3" => Ok(lemma5_3(params)),
        "primary" => Ok(primary(params)),
        "roundtrip" => Ok(roundtrip(params)),
        "thm4_3" => Ok(thm4_3(params)),
        _ => Err(Error::Hypothesis(format!("unknown suite '{name}'; known: {}", SUITES.join(", ")))),
    }
}

// ---- random objects ----

fn random_field<R: Rng>(rng: &mut R, p: u64, max_k: usize) -> FiniteField {
    make_field(p, rng.gen_range(1..=max_k)).expect("small prime power")
}

fn random_invertible<R: Rng>(f: &FiniteField, n: usize, rng: &mut R) -> Mat {
    loop {
        let m = Mat::random(f, n, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

fn random_nilpotent<R: Rng>(f: &FiniteField, n: usize, rng: &mut R) -> Mat {
    let u = Mat::from_fn(f, n, n, |r, c| if c > r { f.random(rng) } else { f.zero() });
    let p = random_invertible(f, n, rng);
    p.mul(&u).mul(&p.inverse().expect("invertible"))
}

fn random_poly<R: Rng>(f: &FiniteField, deg: usize, rng: &mut R) -> Poly {
    Poly::new(f, (0..=deg).map(|_| f.random(rng)).collect())
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Smallest GF(p^k), k ≥ 2, with room for s summands in choose_degrees.
pub fn roundtrip_field(p: u64, s: usize) -> Result<FiniteField> {
    let mut k = 2;
    while p.pow(k as u32 - 1) < s as u64 + 1 {
        k += 1;
    }
    make_field(p, k)
}

/// The zoo examples that exist for p, each over the smallest GF(p^k),
/// k ≥ 2, on which its default parameters are admissible.
pub fn zoo_corpus(primes: &[u64]) -> Vec<Example> {
    let mut out = Vec::new();
    for &p in primes {
        for fam in Family::ALL {
            for k in 2..=3 {
                if let Ok(ex) = zoo::build(fam, &make_field(p, k).expect("small field")) {
                    out.push(ex);
                    break;
                }
            }
        }
    }
    out
}

// ---- compatible pairs and non-singular derivations ----

/// A non-singular α in Comp(K, I), if a few random combinations of the
/// basis find one.
fn sample_nonsingular_pair<R: Rng>(rep: &Representation, rng: &mut R) -> Option<CompatPair> {
    let f = rep.algebra().field().clone();
    let (dk, m) = (rep.algebra().dim(), rep.module_dim());
    let basis = compatible_pair_space(rep);
    for _ in 0..12 {
        let mut alpha = Mat::zeros(&f, dk, dk);
        let mut beta = Mat::zeros(&f, m, m);
        for b in &basis {
            let c = f.random(rng);
            alpha = alpha.add(&b.alpha.scale(c));
            beta = beta.add(&b.beta.scale(c));
        }
        if alpha.is_invertible() {
            return Some(CompatPair { alpha, beta });
        }
    }
    None
}

/// Checks one instance: a sampled pair must be a derivation of K ⋉ I, and
/// whenever the hypotheses hold every ψ(e) must be nilpotent.
fn thm1_8_instance<R: Rng>(rep: &Representation, rng: &mut R) -> Result<Option<std::result::Result<(), String>>> {
    let Some(pair) = sample_nonsingular_pair(rep, rng) else {
        return Ok(None);
    };
    let f = rep.algebra().field();
    let l = semidirect_sum(rep, &LieAlg::abelian(f, rep.module_dim()))?;
    if !crate::deriv::is_derivation(&l, &pair.as_derivation()) {
        return Ok(Some(Err(format!("compatible pair is not a derivation of K ⋉ I over GF({})", f.order()))));
    }
    let r = verify_theorem_1_8(rep, &pair);
    if r.hypotheses_hold && !r.all_psi_nilpotent {
        return Ok(Some(Err(format!(
            "non-nilpotent psi with dim I = {} over GF({})",
            rep.module_dim(),
            f.order()
        ))));
    }
    Ok(Some(Ok(())))
}

/// Each trial builds K abelian of dimension 1 or 2 acting on I, dim I < p,
/// homogeneously for a grading of I (so Comp(K, I) contains a pair with
/// non-singular α), conjugated by a random basis change; a pair sampled
/// from Comp(K, I) is then checked. A dense random ψ is probed alongside
/// and fails the trial if it admits a non-singular α without being
/// nilpotent.
pub fn thm1_8(params: &SuiteParams) -> SuiteReport {
    let p = params.p.unwrap_or(5);
    let trials = params.trials.unwrap_or(100);
    let probes = std::sync::atomic::AtomicUsize::new(0);
    let mut report = run_trials("thm1_8", params.seed, trials, |_, rng| {
        let f = random_field(rng, p, 2);
        let m = rng.gen_range(1..p as usize);
        let a = f.random_nonzero(rng);
        let degs: Vec<Scalar> = (0..m)
            .map(|_| f.add(f.random(rng), f.mul(f.from_int(rng.gen_range(0..m as i64)), a)))
            .collect();
        // entries only where deg r = deg c + a
        let shape = Mat::from_fn(&f, m, m, |r, c| {
            if degs[r] == f.add(degs[c], a) {
                f.random(rng)
            } else {
                f.zero()
            }
        });
        let pm = random_invertible(&f, m, rng);
        let pi = pm.inverse().expect("invertible");
        let x = pm.mul(&shape).mul(&pi);
        let (k, psi) = if rng.gen_bool(0.5) {
            (LieAlg::abelian(&f, 1), vec![x])
        } else {
            let j = rng.gen_range(0..=m) as u128;
            let y = if j == 0 { Mat::zeros(&f, m, m) } else { x.pow(j).scale(f.random(rng)) };
            (LieAlg::abelian(&f, 2), vec![x, y])
        };
        let rep = Representation::new(k, m, psi)?;
        match thm1_8_instance(&rep, rng)? {
            None => return Ok(Outcome::Fail("graded instance has no non-singular compatible pair".into())),
            Some(Err(msg)) => return Ok(Outcome::Fail(msg)),
            Some(Ok(())) => {}
        }
        let probe = Representation::new(LieAlg::abelian(&f, 1), m, vec![Mat::random(&f, m, m, rng)])?;
        match thm1_8_instance(&probe, rng)? {
            Some(Err(msg)) => Ok(Outcome::Fail(format!("random probe: {msg}"))),
            Some(Ok(())) => {
                probes.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                Ok(Outcome::Pass)
            }
            None => Ok(Outcome::Pass),
        }
    });
    let (negative, detail) = thm1_8_negative_control(p);
    report.notes.push(("random_probes_with_pair".into(), probes.into_inner().to_string()));
    report.notes.push(("negative_control".into(), detail));
    if !negative {
        report.failed += 1;
        report.counterexample.get_or_insert("negative control: the p-cycle psi(x) is nilpotent".into());
    }
    report
}

/// The p-cycle example has dim I = p and a compatible pair with non-singular α, and
/// ψ(x) is not nilpotent: the bound dim I < p cannot be dropped.
pub fn thm1_8_negative_control(p: u64) -> (bool, String) {
    let Ok(f) = make_field(p, 2) else {
        return (false, "no field".into());
    };
    let Ok(ex) = zoo::mattarei(&f) else {
        return (false, "no p-cycle example".into());
    };
    let d = ex.delta.matrix();
    let n = ex.algebra.dim();
    let pair = CompatPair {
        alpha: d.submatrix(0..1, 0..1),
        beta: d.submatrix(1..n, 1..n),
    };
    let r = verify_theorem_1_8(&ex.rep, &pair);
    let ok = pair.is_compatible(&ex.rep) && r.alpha_nonsingular && !r.dim_below_p && !r.all_psi_nilpotent;
    (ok, format!("cycle_p{p}_psi_x_nilpotent={}", r.all_psi_nilpotent))
}

// ---- matrix identities ----

/// [A, B] = C + λB with [B, C] = 0 gives [A, B^r] = r B^{r−1} C + λ r B^r,
/// and B^n = 0 when λ ≠ 0 and C is nilpotent.
pub fn lemma0_9(params: &SuiteParams) -> SuiteReport {
    let p = params.p.unwrap_or(7);
    let n = params.n.unwrap_or(3).max(1);
    let trials = params.trials.unwrap_or(60);
    let mut report = run_trials("lemma0_9", params.seed, trials, |_, rng| {
        if n >= p as usize {
            return Ok(Outcome::Skip);
        }
        let f = random_field(rng, p, 2);
        // nilpotent B with C = g(B), g(0) = 0 keeps tr((C + λB)Bᵏ) = 0, so
        // the system is usually solvable; dense B probes the B^n = 0 claim
        let nilpotent = rng.gen_bool(0.8);
        let b = if nilpotent {
            random_nilpotent(&f, n, rng)
        } else {
            Mat::random(&f, n, n, rng)
        };
        let mut g = random_poly(&f, n - 1, rng);
        if nilpotent {
            g = &g - &Poly::constant(&f, g.coeff(0));
        }
        let c = b.eval_poly(&g);
        let lam = if rng.gen_bool(0.25) { f.zero() } else { f.random(rng) };
        let rhs = c.add(&b.scale(lam));
        // (AB − BA)[r][c] as a linear map of A
        let nn = n * n;
        let sys = Mat::from_fn(&f, nn, nn, |row, col| {
            let (r, cc) = (row / n, row % n);
            let (ar, ac) = (col / n, col % n);
            let mut v = f.zero();
            if ar == r {
                v = f.add(v, b.get(ac, cc));
            }
            if ac == cc {
                v = f.sub(v, b.get(r, ar));
            }
            v
        });
        let Some(sol) = sys.solve(rhs.entries()) else {
            return Ok(Outcome::Skip);
        };
        let a = Mat::from_fn(&f, n, n, |r, c| sol[r * n + c]);
        if a.commutator(&b) != rhs || !b.commutator(&c).is_zero() {
            return Ok(Outcome::Fail("constructed triple is wrong".into()));
        }
        for r in 1..=n {
            let lhs = a.commutator(&b.pow(r as u128));
            let rr = f.from_int(r as i64);
            let want = b.pow(r as u128 - 1).mul(&c).scale(rr).add(&b.pow(r as u128).scale(f.mul(lam, rr)));
            if lhs != want {
                return Ok(Outcome::Fail(format!("[A, B^{r}] mismatch for n = {n} over GF({})", f.order())));
            }
        }
        if !lam.is_zero() && c.is_nilpotent() && !b.pow(n as u128).is_zero() {
            return Ok(Outcome::Fail(format!("B^n != 0 with lambda != 0, n = {n}")));
        }
        Ok(Outcome::Pass)
    });
    report.notes.push(("n".into(), n.to_string()));
    report.notes.push(("solved".into(), report.passed.to_string()));
    report
}

/// ad_x^m(y) = Σ_i (−1)^i C(m, i) x^{m−i} y x^i for m ≤ 5.
pub fn lemma4_1_16(params: &SuiteParams) -> SuiteReport {
    let p = params.p.unwrap_or(7);
    let max_n = params.n.unwrap_or(6);
    let trials = params.trials.unwrap_or(100);
    run_trials("lemma4_1_16", params.seed, trials, |_, rng| {
        let f = random_field(rng, p, 3);
        let n = rng.gen_range(1..=max_n);
        let x = Mat::random(&f, n, n, rng);
        let y = Mat::random(&f, n, n, rng);
        let mut lhs = y.clone();
        for m in 1..=5usize {
            lhs = x.commutator(&lhs);
            let mut rhs = Mat::zeros(&f, n, n);
            for i in 0..=m {
                let c = f.from_int(if i % 2 == 0 { 1 } else { -1 } * binomial(m, i));
                rhs = rhs.add(&x.pow((m - i) as u128).mul(&y).mul(&x.pow(i as u128)).scale(c));
            }
            if lhs != rhs {
                return Ok(Outcome::Fail(format!("m = {m}, n = {n}, GF({})", f.order())));
            }
        }
        Ok(Outcome::Pass)
    })
}

// ---- derivations of the zoo ----

struct ZooDer {
    example: Example,
    basis: Vec<Derivation>,
}

fn zoo_with_derivations(primes: &[u64]) -> Vec<ZooDer> {
    zoo_corpus(primes)
        .into_par_iter()
        .map(|example| {
            let basis = derivation_space(&example.algebra);
            ZooDer { example, basis }
        })
        .collect()
}

fn random_derivation<R: Rng>(z: &ZooDer, rng: &mut R) -> Mat {
    let f = z.example.algebra.field();
    let n = z.example.algebra.dim();
    if rng.gen_bool(0.2) {
        return z.example.delta.matrix().clone();
    }
    z.basis
        .iter()
        .fold(Mat::zeros(f, n, n), |acc, d| acc.add(&d.matrix().scale(f.random(rng))))
}

fn primes_for(params: &SuiteParams) -> Vec<u64> {
    match params.p {
        Some(p) => vec![p],
        None => vec![2, 3, 5],
    }
}

/// δ^m[u, v] = Σ_k C(m, k)[δ^k u, δ^{m−k} v] for m ≤ 2p, all basis pairs.
pub fn leibniz(params: &SuiteParams) -> SuiteReport {
    let corpus = zoo_with_derivations(&primes_for(params));
    let trials = params.trials.unwrap_or(3 * corpus.len().max(1));
    let mut report = run_trials("leibniz", params.seed, trials, |i, rng| {
        let Some(z) = corpus.get(i % corpus.len().max(1)) else {
            return Ok(Outcome::Skip);
        };
        let l = &z.example.algebra;
        let f = l.field();
        let p = f.characteristic() as usize;
        let n = l.dim();
        let d = random_derivation(z, rng);
        let powers: Vec<Mat> = (0..=2 * p).fold(vec![Mat::identity(f, n)], |mut acc, _| {
            let next = acc.last().unwrap().mul(&d);
            acc.push(next);
            acc
        });
        for u in 0..n {
            for v in u + 1..n {
                let uv = l.basis_bracket(u, v);
                for m in 1..=2 * p {
                    let lhs = powers[m].mul_vec(&uv);
                    let mut rhs = vec![Scalar::ZERO; n];
                    for k in 0..=m {
                        let c = f.from_int(binomial(m, k));
                        if c.is_zero() {
                            continue;
                        }
                        let t = l.bracket(&powers[k].col(u), &powers[m - k].col(v));
                        for (a, b) in rhs.iter_mut().zip(t) {
                            *a = f.add(*a, f.mul(c, b));
                        }
                    }
                    if lhs != rhs {
                        return Ok(Outcome::Fail(format!(
                            "{} p={}: m = {m}, pair ({u}, {v})",
                            z.example.family.name(),
                            p
                        )));
                    }
                }
            }
        }
        Ok(Outcome::Pass)
    });
    report.notes.push(("algebras".into(), corpus.len().to_string()));
    report
}

/// δ^p ∈ Der L for random derivations, and (α^p, β^p) ∈ Comp(K, I) for
/// random compatible pairs of the zoo modules.
pub fn leib(params: &SuiteParams) -> SuiteReport {
    let corpus = zoo_with_derivations(&primes_for(params));
    let comps: Vec<Vec<CompatPair>> = corpus
        .par_iter()
        .map(|z| compatible_pair_space(&z.example.rep))
        .collect();
    let trials = params.trials.unwrap_or(4 * corpus.len().max(1));
    let mut report = run_trials("leib", params.seed, trials, |i, rng| {
        let j = i % corpus.len().max(1);
        let Some(z) = corpus.get(j) else {
            return Ok(Outcome::Skip);
        };
        let l = &z.example.algebra;
        let f = l.field();
        let d = random_derivation(z, rng);
        if frobenius_power(l, &Derivation::new(l, d)?).is_err() {
            return Ok(Outcome::Fail(format!("{}: delta^p is not a derivation", z.example.family.name())));
        }
        let rep = &z.example.rep;
        let (dk, m) = (rep.algebra().dim(), rep.module_dim());
        let mut pair = CompatPair {
            alpha: Mat::zeros(f, dk, dk),
            beta: Mat::zeros(f, m, m),
        };
        for b in &comps[j] {
            let c = f.random(rng);
            pair.alpha = pair.alpha.add(&b.alpha.scale(c));
            pair.beta = pair.beta.add(&b.beta.scale(c));
        }
        if !pair.is_compatible(rep) || pair.frobenius_power(rep).is_err() {
            return Ok(Outcome::Fail(format!("{}: (alpha^p, beta^p) not compatible", z.example.family.name())));
        }
        Ok(Outcome::Pass)
    });
    report.notes.push((
        "comp_dims".into(),
        comps.iter().map(|c| c.len().to_string()).collect::<Vec<_>>().join(","),
    ));
    report
}

// ---- primary decomposition ----

fn small_field<R: Rng>(rng: &mut R) -> FiniteField {
    let (p, k) = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3)][rng.gen_range(0..7)];
    make_field(p, k).expect("small field")
}

/// Random x of dimension ≤ 8, either dense or conjugate to a block sum of
/// companion matrices of prime powers.
fn random_endomorphism<R: Rng>(rng: &mut R) -> Mat {
    let f = small_field(rng);
    let n = rng.gen_range(1..=8);
    if rng.gen_bool(0.5) {
        return Mat::random(&f, n, n, rng);
    }
    let mut blocks = Vec::new();
    let mut left = n;
    while left > 0 {
        let d = rng.gen_range(1..=left.min(2));
        let mut q = random_poly(&f, d, rng);
        while q.degree() != Some(d) || !q.monic().is_irreducible() {
            q = random_poly(&f, d, rng);
        }
        let q = q.monic();
        let e = rng.gen_range(1..=left / d);
        blocks.push(Mat::companion(&q.pow(e as u64)));
        left -= d * e;
    }
    let x = Mat::block_diag(&f, &blocks);
    let p = random_invertible(&f, n, rng);
    p.mul(&x).mul(&p.inverse().expect("invertible"))
}

/// Components fill V directly, each is x-invariant, and x restricted to
/// V_0(q(x)) has minimal polynomial q^k.
pub fn primary(params: &SuiteParams) -> SuiteReport {
    let trials = params.trials.unwrap_or(100);
    run_trials("primary", params.seed, trials, |_, rng| {
        let x = random_endomorphism(rng);
        let f = x.field().clone();
        let n = x.rows();
        let comps = primary_decomposition(&x);
        let total = comps.iter().fold(Subspace::zero(&f, n), |acc, c| acc.sum(&c.space));
        let dims: usize = comps.iter().map(|c| c.space.dim()).sum();
        if dims != n || !total.is_full() {
            return Ok(Outcome::Fail(format!("dims sum to {dims}, n = {n}")));
        }
        for c in &comps {
            if !check_invariance(&c.space, &x) {
                return Ok(Outcome::Fail("component is not invariant".into()));
            }
            let r = restriction(&x, &c.space).expect("invariant");
            if minpoly(&r) != c.q.pow(c.multiplicity as u64) {
                return Ok(Outcome::Fail(format!("restriction to V0({}) has the wrong minimal polynomial", c.q)));
            }
        }
        Ok(Outcome::Pass)
    })
}

/// [x^n, y] = 0 for some n ≤ 4 makes every V_0(q(x)) y-invariant.
pub fn linear05(params: &SuiteParams) -> SuiteReport {
    let trials = params.trials.unwrap_or(100);
    run_trials("linear05", params.seed, trials, |_, rng| {
        let mut x = random_endomorphism(rng);
        let f = x.field().clone();
        let dim = x.rows();
        if rng.gen_bool(0.5) {
            // force a kernel so the perturbation below is non-trivial
            let keep = Mat::diag(&f, &(0..dim).map(|i| if i == 0 { f.zero() } else { f.one() }).collect::<Vec<_>>());
            x = x.mul(&keep);
        }
        let n = rng.gen_range(1..=4u32);
        let xn = x.pow(n as u128);
        let mut y = xn.eval_poly(&random_poly(&f, 3, rng));
        // u wᵀ with xⁿu = 0 and wᵀxⁿ = 0 commutes with xⁿ
        let ku = xn.kernel();
        let kw = xn.transpose().kernel();
        if !ku.is_zero() && !kw.is_zero() {
            let u = ku.combine(&(0..ku.dim()).map(|_| f.random(rng)).collect::<Vec<_>>());
            let w = kw.combine(&(0..kw.dim()).map(|_| f.random(rng)).collect::<Vec<_>>());
            y = y.add(&Mat::from_fn(&f, dim, dim, |r, c| f.mul(u[r], w[c])));
        }
        if !xn.commutator(&y).is_zero() {
            return Ok(Outcome::Fail("constructed y does not commute with x^n".into()));
        }
        for c in primary_decomposition(&x) {
            if !check_invariance(&c.space, &y) {
                return Ok(Outcome::Fail(format!("V0({}) is not y-invariant, n = {n}", c.q)));
            }
        }
        Ok(Outcome::Pass)
    })
}

/// Every I_0(q(x)) is δ-invariant when δ(I) ⊆ I and δ(x) = bx. Runs over
/// the zoo and over random built algebras.
pub fn lemma5_3(params: &SuiteParams) -> SuiteReport {
    let primes = primes_for(params);
    let corpus = zoo_corpus(&primes);
    let trials = params.trials.unwrap_or(corpus.len() + 40);
    let mut report = run_trials("lemma5_3", params.seed, trials, |i, rng| {
        let (l, delta, dk) = match corpus.get(i) {
            Some(ex) => (ex.algebra.clone(), ex.delta.matrix().clone(), ex.k_dim()),
            None => {
                let p = primes[rng.gen_range(0..primes.len())];
                let (built, _) = random_built(p, None, rng)?;
                (built.algebra, built.delta.into_matrix(), 1)
            }
        };
        let n = l.dim();
        let f = l.field();
        let ideal = Subspace::span(f, n, &(dk..n).map(|j| crate::linalg::unit(n, j)).collect::<Vec<_>>());
        let x = crate::linalg::unit(n, 0);
        let dx = delta.mul_vec(&x);
        if !ideal.is_invariant(&delta) || dx.iter().enumerate().any(|(j, c)| j > 0 && !c.is_zero()) {
            return Ok(Outcome::Skip);
        }
        let xi = ideal.restrict(&l.ad(&x)).expect("ideal");
        let di = ideal.restrict(&delta).expect("checked");
        for c in primary_decomposition(&xi) {
            if !check_invariance(&c.space, &di) {
                return Ok(Outcome::Fail(format!("I0({}) is not delta-invariant", c.q)));
            }
        }
        // the linear-factor subspaces over the base field, I_0(x − a)
        for (a, _) in eigen_decomposition(&xi) {
            let s = primary_subspace(&xi, &Poly::linear(f, a))?;
            if !check_invariance(&s, &di) {
                return Ok(Outcome::Fail(format!("I0(x - {}) is not delta-invariant", f.fmt_scalar(a))));
            }
        }
        Ok(Outcome::Pass)
    });
    report.notes.push(("zoo_algebras".into(), corpus.len().to_string()));
    report
}

// ---- build then decompose ----

/// Multiset of summand dimensions the decomposition must produce: each
/// distinct c in Π (t^p − c_i) contributes p times its multiplicity.
fn expected_dims(p: usize, roots: &[Vec<Scalar>]) -> Vec<usize> {
    let mut out = Vec::new();
    for cs in roots {
        let mut sorted = cs.clone();
        sorted.sort_unstable();
        let mut i = 0;
        while i < sorted.len() {
            let j = (i..sorted.len()).find(|&j| sorted[j] != sorted[i]).unwrap_or(sorted.len());
            out.push((j - i) * p);
            i = j;
        }
    }
    out.sort_unstable();
    out
}

/// Random input for build_derivation: s summands, r_j ≤ 3, each minimal
/// polynomial a product of factors t^p − c. Half the summands are primary
/// (all c equal).
fn random_built<R: Rng>(p: u64, s: Option<usize>, rng: &mut R) -> Result<(crate::pcyclic::Built, Vec<Vec<Scalar>>)> {
    let s = s.unwrap_or_else(|| rng.gen_range(1..=3));
    let f = roundtrip_field(p, s)?;
    let mut roots = Vec::with_capacity(s);
    let mut polys = Vec::with_capacity(s);
    for _ in 0..s {
        let r = rng.gen_range(1..=3);
        let primary = rng.gen_bool(0.5);
        let c0 = f.random_nonzero(rng);
        let cs: Vec<Scalar> = (0..r)
            .map(|_| if primary { c0 } else { f.random_nonzero(rng) })
            .collect();
        let q = cs.iter().fold(Poly::one(&f), |acc, &c| {
            let factor = &Poly::monomial(&f, f.one(), p as usize) - &Poly::constant(&f, c);
            &acc * &factor
        });
        polys.push(q);
        roots.push(cs);
    }
    Ok((build_derivation(&polys, &f)?, roots))
}

/// build_derivation followed by xp_decompose. The decomposition must
/// reproduce the elementary-divisor dimensions, which equal the input
/// dimensions whenever every input polynomial is primary.
pub fn roundtrip(params: &SuiteParams) -> SuiteReport {
    let primes = primes_for(params);
    let trials = params.trials.unwrap_or(120);
    let exact = std::sync::atomic::AtomicUsize::new(0);
    let mut report = run_trials("roundtrip", params.seed, trials, |i, rng| {
        let p = primes[i % primes.len()];
        let (built, roots) = random_built(p, params.s, rng)?;
        let s = roots.len();
        let pu = p as usize;
        let eig = eigen_decomposition(built.delta.matrix());
        if eig.len() != s * pu + 1 {
            return Ok(Outcome::Fail(format!("delta has {} distinct eigenvalues, expected {}", eig.len(), s * pu + 1)));
        }
        let dec = xp_decompose(&built.algebra, &built.x, &built.delta)?;
        dec.direct_sum_certificate()?;
        let want = expected_dims(pu, &roots);
        let got = dec.dims();
        let mut input: Vec<usize> = roots.iter().map(|c| c.len() * pu).collect();
        input.sort_unstable();
        if got != want {
            return Ok(Outcome::Fail(format!("p={p} input {input:?}: expected {want:?}, got {got:?}")));
        }
        if input == want {
            exact.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        }
        Ok(Outcome::Pass)
    });
    report.notes.push(("input_multiset_recovered".into(), exact.into_inner().to_string()));
    report
}

// ---- derived length two ----

/// L with a non-singular derivation and every dim L^(i)/L^(i+1) < p must
/// be nilpotent; every non-nilpotent member of the corpus therefore has a
/// derived quotient of dimension ≥ p.
pub fn thm4_3(params: &SuiteParams) -> SuiteReport {
    let primes = primes_for(params);
    let mut corpus: Vec<(String, LieAlg, Mat)> = zoo_corpus(&primes)
        .into_iter()
        .map(|ex| (format!("{}_p{}", ex.family.name(), ex.p()), ex.algebra, ex.delta.into_matrix()))
        .collect();
    for &p in &primes {
        let f = make_field(p, 1).expect("prime field");
        if p > 2 {
            let h = LieAlg::heisenberg(&f);
            let g = Grading::from_basis_degrees(&h, &[f.from_int(1), f.from_int(1), f.from_int(2)]).expect("grading");
            corpus.push((format!("heisenberg_p{p}"), h.clone(), derivation_from_grading(&h, &g).expect("grading").into_matrix()));
        }
        corpus.push((format!("abelian3_p{p}"), LieAlg::abelian(&f, 3), Mat::identity(&f, 3)));
    }
    let base = corpus.len();
    let trials = params.trials.unwrap_or(base + 20);
    let large = std::sync::atomic::AtomicUsize::new(0);
    let mut report = run_trials("thm4_3", params.seed, trials, |i, rng| {
        let (name, l, d) = match corpus.get(i) {
            Some((n, l, d)) => (n.clone(), l.clone(), d.clone()),
            None => {
                let p = primes[i % primes.len()];
                let (b, _) = random_built(p, None, rng)?;
                (format!("built_p{p}"), b.algebra, b.delta.into_matrix())
            }
        };
        if !d.is_invertible() || !crate::deriv::is_derivation(&l, &d) {
            return Ok(Outcome::Fail(format!("{name}: corpus derivation is invalid")));
        }
        let p = l.field().characteristic() as usize;
        let dims = l.derived_dims();
        let big = dims.windows(2).any(|w| w[0] - w[1] >= p);
        if big {
            large.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        }
        if !big && !l.is_nilpotent() {
            return Ok(Outcome::Fail(format!("{name}: derived dims {dims:?} all below p yet not nilpotent")));
        }
        Ok(Outcome::Pass)
    });
    report.notes.push(("with_quotient_ge_p".into(), large.into_inner().to_string()));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_dims_groups_roots() {
        let f = make_field(3, 2).unwrap();
        let (a, b) = (f.from_int(1), f.from_int(2));
        assert_eq!(expected_dims(3, &[vec![a, a], vec![a, b]]), vec![3, 3, 6]);
    }

    #[test]
    fn roundtrip_fields() {
        assert_eq!(roundtrip_field(2, 3).unwrap().order(), 8);
        assert_eq!(roundtrip_field(3, 3).unwrap().order(), 27);
        assert_eq!(roundtrip_field(5, 3).unwrap().order(), 25);
    }

    #[test]
    fn small_runs_pass() {
        let params = SuiteParams {
            trials: Some(6),
            ..SuiteParams::default()
        };
        for name in ["lemma0_9", "lemma4_1_16", "primary", "linear05"] {
            let r = run_suite(name, &params).unwrap();
            assert!(r.ok(), "{r}");
        }
        assert!(run_suite("nope", &params).is_err());
    }
}

//! Shared helpers for the integration tests: seeded randomness and an
//! independent model of divided powers as rational polynomials.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weylext::dpa::{DividedMonomial, DpaElement};
use weylext::intlin::IntMatrix;

/// RNG seeded from `WEYLEXT_SEED` when set, else from `default`.
pub fn rng(default: u64) -> ChaCha8Rng {
    let seed = std::env::var("WEYLEXT_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(default);
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng, max_rows: usize, max_cols: usize, bound: i64) -> IntMatrix {
    let rows = rng.gen_range(1..=max_rows);
    let cols = rng.gen_range(1..=max_cols);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    IntMatrix::from_i64(&data).unwrap()
}

pub fn random_monomial(rng: &mut impl Rng, n: usize, max_degree: u32) -> DividedMonomial {
    let mut exps = vec![0u32; n];
    let d = rng.gen_range(0..=max_degree);
    for _ in 0..d {
        exps[rng.gen_range(0..n)] += 1;
    }
    DividedMonomial::new(exps)
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// A polynomial in tensor copies of commuting variables x₁..xₙ: key is one
/// exponent vector per tensor factor.
pub type Poly = BTreeMap<Vec<Vec<u32>>, BigRational>;

fn add_into(p: &mut Poly, k: Vec<Vec<u32>>, c: BigRational) {
    let vanished = {
        let e = p.entry(k.clone()).or_insert_with(BigRational::zero);
        *e += c;
        e.is_zero()
    };
    if vanished {
        p.remove(&k);
    }
}

/// f^{(e)} ↦ f^e / e!, factor by factor.
pub fn model_of(e: &DpaElement) -> Poly {
    let mut p = Poly::new();
    for (m, c) in e.terms() {
        let mut denom = BigInt::one();
        let key: Vec<Vec<u32>> = m
            .factors()
            .iter()
            .map(|f| {
                for &x in f.exponents() {
                    denom *= factorial(x);
                }
                f.exponents().to_vec()
            })
            .collect();
        add_into(&mut p, key, BigRational::new(c.clone(), denom));
    }
    p
}

pub fn model_monomial(x: &DividedMonomial) -> Poly {
    let denom = x.exponents().iter().fold(BigInt::one(), |acc, &e| acc * factorial(e));
    let mut p = Poly::new();
    p.insert(vec![x.exponents().to_vec()], BigRational::new(BigInt::one(), denom));
    p
}

/// Ordinary product of single-factor polynomials.
pub fn model_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let key: Vec<Vec<u32>> = ka
                .iter()
                .zip(kb)
                .map(|(u, v)| u.iter().zip(v).map(|(x, y)| x + y).collect())
                .collect();
            add_into(&mut out, key, ca * cb);
        }
    }
    out
}

/// Diagonal of a single-factor polynomial into `parts` tensor factors, by
/// substituting xₖ ↦ Σ_slots xₖ and expanding; then keeping the terms with
/// the requested factor degrees.
pub fn model_delta(p: &Poly, degrees: &[u32]) -> Poly {
    let parts = degrees.len();
    let mut out = Poly::new();
    for (key, c) in p {
        let exps = &key[0];
        let n = exps.len();
        let mut acc = Poly::new();
        acc.insert(vec![vec![0; n]; parts], c.clone());
        for (var, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                let mut sum = Poly::new();
                for slot in 0..parts {
                    let mut k = vec![vec![0; n]; parts];
                    k[slot][var] = 1;
                    sum.insert(k, BigRational::one());
                }
                acc = model_mul(&acc, &sum);
            }
        }
        for (k, v) in acc {
            let ok = k
                .iter()
                .zip(degrees)
                .all(|(f, &d)| f.iter().sum::<u32>() == d);
            if ok {
                add_into(&mut out, k, v);
            }
        }
    }
    out
}

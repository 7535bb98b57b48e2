#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use pdlift_core::arith::Domain;
use pdlift_core::poly::{Monomial, Polynomial};
use rand::Rng;

pub fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

pub fn corpus_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "inst"))
        .collect();
    files.sort();
    files
}

/// Runs the CLI in-process and returns (exit code, stdout, stderr).
pub fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("pdlift").chain(args.iter().copied());
    let code = pdlift_core::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Random polynomial with small integer coefficients and exponents below
/// `max_exp`.
pub fn random_poly<R: Rng>(rng: &mut R, d: Domain, nvars: usize, max_terms: usize, max_exp: u32) -> Polynomial {
    let k = rng.gen_range(0..=max_terms);
    let mut f = Polynomial::zero(d, nvars);
    for _ in 0..k {
        let e: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..max_exp)).collect();
        let c = rng.gen_range(-6i64..=6);
        f.add_term(Monomial::new(e), d.from_i64(c));
    }
    f
}

/// Random element of the maximal ideal with exponents below `bounds`.
pub fn random_in_max_ideal<R: Rng>(rng: &mut R, d: Domain, bounds: &[u32], max_terms: usize) -> Polynomial {
    let n = bounds.len();
    let mut f = Polynomial::zero(d, n);
    for _ in 0..rng.gen_range(0..=max_terms) {
        let e: Vec<u32> = bounds.iter().map(|&b| rng.gen_range(0..b)).collect();
        let m = Monomial::new(e);
        if m.is_one() {
            continue;
        }
        f.add_term(m, d.from_i64(rng.gen_range(0i64..50)));
    }
    f
}

/// Naive power by repeated multiplication.
pub fn naive_pow(f: &Polynomial, k: u64) -> Polynomial {
    let mut acc = Polynomial::one(f.domain(), f.nvars());
    for _ in 0..k {
        acc = &acc * f;
    }
    acc
}

/// `C(m, n) mod p` from the exact big-integer binomial.
pub fn bignum_binom_mod(m: u64, n: u64, p: u64) -> u64 {
    if n > m {
        return 0;
    }
    let b: BigUint = num_integer::binomial(BigUint::from(m), BigUint::from(n));
    (b % BigUint::from(p)).to_u64().unwrap()
}

/// Primes below `limit` by a sieve.
pub fn primes_below(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut composite = vec![false; limit.max(2)];
    let mut out = Vec::new();
    for i in 2..limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// `C(m, n) mod p` from the prime factorization of `C(m, n)` given by
/// Legendre's formula. `primes` must cover `2..=m`.
pub fn factored_binom_mod(m: u64, n: u64, p: u64, primes: &[u64]) -> u64 {
    if n > m {
        return 0;
    }
    let v = |l: u64, x: u64| {
        let (mut s, mut pw) = (0u64, l);
        while pw <= x {
            s += x / pw;
            match pw.checked_mul(l) {
                Some(next) => pw = next,
                None => break,
            }
        }
        s
    };
    let mut acc = 1u64;
    for &l in primes.iter().take_while(|&&l| l <= m) {
        let e = v(l, m) - v(l, n) - v(l, m - n);
        if e == 0 {
            continue;
        }
        if l == p {
            return 0;
        }
        let base = l % p;
        for _ in 0..e {
            acc = acc * base % p;
        }
    }
    acc
}

pub fn coeff_to_u64(c: &pdlift_core::arith::Coeff) -> u64 {
    match c {
        pdlift_core::arith::Coeff::Fp(x) => *x,
        other => panic!("expected a prime field element, got {other}"),
    }
}

//! Binomials and multinomials, exactly and modulo a prime (Lucas).

use num_bigint::BigUint;
use num_traits::One;

use crate::arith::{is_prime, Coeff, Domain};
use crate::error::{Error, Result};

/// Base-`p` expansion `n = Σ dᵢ pⁱ`, least significant digit first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicDigits {
    base: u64,
    digits: Vec<u64>,
}

impl PAdicDigits {
    pub fn new(mut n: u64, base: u64) -> Self {
        assert!(base >= 2, "base must be at least 2");
        let mut digits = Vec::new();
        while n > 0 {
            digits.push(n % base);
            n /= base;
        }
        if digits.is_empty() {
            digits.push(0);
        }
        PAdicDigits { base, digits }
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// Digit at position `i`, zero past the end.
    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    pub fn value(&self) -> u64 {
        self.digits
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * self.base + d)
    }
}

pub fn binom_exact(m: u64, n: u64) -> BigUint {
    if n > m {
        return BigUint::ZERO;
    }
    let n = n.min(m - n);
    let mut acc = BigUint::one();
    for i in 0..n {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

/// `C(a, b) mod p` for digits `a, b < p`, where every factor is a unit.
fn small_binom_mod(a: u64, b: u64, p: u64) -> u64 {
    if b > a {
        return 0;
    }
    let f = Domain::PrimeField(p);
    let mut num = f.one();
    let mut den = f.one();
    for i in 0..b {
        num = f.mul(&num, &f.from_i64((a - i) as i64));
        den = f.mul(&den, &f.from_i64((i + 1) as i64));
    }
    match f.div(&num, &den).expect("digit factorials are units") {
        Coeff::Fp(v) => v,
        _ => unreachable!(),
    }
}

fn binom_mod_p_raw(m: u64, n: u64, p: u64) -> u64 {
    let (dm, dn) = (PAdicDigits::new(m, p), PAdicDigits::new(n, p));
    let len = dm.digits().len().max(dn.digits().len());
    let mut acc = 1u64;
    for i in 0..len {
        let c = small_binom_mod(dm.digit(i), dn.digit(i), p);
        if c == 0 {
            return 0;
        }
        acc = ((acc as u128 * c as u128) % p as u128) as u64;
    }
    acc
}

/// `C(m, n)` in `F_p`, computed digitwise.
pub fn binom_mod_p(m: u64, n: u64, p: u64) -> Result<Coeff> {
    if !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    Ok(Coeff::Fp(binom_mod_p_raw(m, n, p)))
}

/// `top! / Π partsᵢ!` in `F_p`, as the nested product
/// `C(top, k₁)·C(top−k₁, k₂)·…`.
pub fn multinomial_mod_p(top: u64, parts: &[u64], p: u64) -> Result<Coeff> {
    if !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    if parts.iter().sum::<u64>() != top {
        return Err(Error::InvalidPartition {
            top,
            parts: parts.to_vec(),
        });
    }
    let mut remaining = top;
    let mut acc = 1u64;
    for &k in parts {
        let c = binom_mod_p_raw(remaining, k, p);
        acc = ((acc as u128 * c as u128) % p as u128) as u64;
        remaining -= k;
    }
    Ok(Coeff::Fp(acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    // Pascal's rule, independent of the multiplicative formula.
    fn pascal(m: usize) -> Vec<Vec<BigUint>> {
        let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
        for i in 1..=m {
            let prev = &rows[i - 1];
            let mut row = vec![BigUint::one(); i + 1];
            for j in 1..i {
                row[j] = &prev[j - 1] + &prev[j];
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn exact_matches_pascal() {
        let table = pascal(40);
        for m in 0..=40u64 {
            for n in 0..=m {
                assert_eq!(binom_exact(m, n), table[m as usize][n as usize]);
            }
        }
        assert_eq!(binom_exact(7, 3), BigUint::from(35u32));
        assert_eq!(binom_exact(9, 0), BigUint::one());
        assert_eq!(binom_exact(2, 5), BigUint::ZERO);
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(binom_mod_p(7, 3, 2).unwrap(), Coeff::Fp(1));
        assert_eq!(binom_mod_p(5, 2, 2).unwrap(), Coeff::Fp(0));
        for p in [2u64, 3, 5, 7] {
            assert_eq!(binom_mod_p(2 * p - 1, p, p).unwrap(), Coeff::Fp(1));
        }
        assert_eq!(binom_mod_p(3, 1, 4), Err(Error::InvalidPrime(4)));
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial_mod_p(3, &[1, 1, 1], 3).unwrap(), Coeff::Fp(0));
        assert_eq!(multinomial_mod_p(6, &[6], 5).unwrap(), Coeff::Fp(1));
        assert_eq!(multinomial_mod_p(4, &[2, 2], 2).unwrap(), Coeff::Fp(0));
        assert!(matches!(
            multinomial_mod_p(4, &[1, 2], 2),
            Err(Error::InvalidPartition { .. })
        ));
    }

    #[test]
    fn digits_round_trip() {
        for (n, p) in [(0u64, 2u64), (1, 3), (35, 2), (1000, 7), (24, 5)] {
            let d = PAdicDigits::new(n, p);
            assert_eq!(d.value(), n);
            assert!(d.digits().iter().all(|&x| x < p));
            assert!(d.digits().len() == 1 || *d.digits().last().unwrap() != 0);
        }
    }

    #[test]
    fn zero_digit_factor_kills_product() {
        // 5 = 101₂, 2 = 010₂: the middle digit gives C(0,1) = 0.
        assert_eq!(small_binom_mod(0, 1, 2), 0);
        assert_eq!(binom_mod_p_raw(5, 2, 2), 0);
    }

    // C(m, n) mod p from its exact factorization (Legendre), independent of Lucas.
    fn factored_binom_mod(m: u64, n: u64, p: u64) -> u64 {
        if n > m {
            return 0;
        }
        let v = |l: u64, x: u64| {
            let (mut s, mut pw) = (0u64, l);
            while pw <= x {
                s += x / pw;
                pw = match pw.checked_mul(l) {
                    Some(next) => next,
                    None => break,
                };
            }
            s
        };
        let mut acc = 1u64;
        for l in 2..=m {
            if !is_prime(l) {
                continue;
            }
            let e = v(l, m) - v(l, n) - v(l, m - n);
            if e == 0 {
                continue;
            }
            if l == p {
                return 0;
            }
            for _ in 0..e {
                acc = acc * (l % p) % p;
            }
        }
        acc
    }

    proptest! {
        #[test]
        fn lucas_agrees_with_bignum(m in 0u64..3000, n in 0u64..3000, pi in 0usize..4) {
            let p = [2u64, 3, 5, 7][pi];
            let exact = (binom_exact(m, n) % p).to_u64().unwrap();
            prop_assert_eq!(binom_mod_p(m, n, p).unwrap(), Coeff::Fp(exact));
        }

        #[test]
        fn lucas_agrees_with_factorization(m in 0u64..100_000, n in 0u64..100_000, pi in 0usize..4) {
            let p = [2u64, 3, 5, 7][pi];
            prop_assert_eq!(binom_mod_p(m, n, p).unwrap(), Coeff::Fp(factored_binom_mod(m, n, p)));
        }

        #[test]
        fn vandermonde(l in 0u64..=50, m in 0u64..=50, n in 0u64..=50) {
            let rhs: BigUint = (0..=l).map(|i| binom_exact(m, i) * binom_exact(n, l - i)).sum();
            prop_assert_eq!(binom_exact(m + n, l), rhs);
        }
    }
}

//! Exact coefficient domains.
//!
//! A [`Domain`] is a small `Copy` descriptor; the elements themselves are
//! [`Coeff`] values that do not carry their modulus. Every arithmetic
//! operation goes through the domain, so a coefficient is only meaningful
//! together with the domain that produced it.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest prime modulus accepted, so that products fit in `u128` comfortably
/// and trial-division primality stays cheap.
pub const MAX_PRIME: u64 = u32::MAX as u64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    /// The prime field `F_p`.
    PrimeField(u64),
    /// The rationals.
    Rationals,
    /// `Q(√d)` for a square-free `d ≥ 2`.
    QuadraticField(i64),
}

/// An element of some [`Domain`].
///
/// Rationals are kept reduced with a positive denominator (guaranteed by
/// `BigRational`), so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Fp(u64),
    Q(BigRational),
    /// `a + b·√d`.
    Quad(BigRational, BigRational),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn is_square_free(d: i64) -> bool {
    let mut k: i64 = 2;
    while k * k <= d {
        if d % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Inverse modulo `p` by the extended Euclidean algorithm.
fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

impl Domain {
    pub fn prime_field(p: u64) -> Result<Self> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Domain::PrimeField(p))
    }

    pub fn quadratic(d: i64) -> Result<Self> {
        if d < 2 || !is_square_free(d) {
            return Err(Error::InvalidDomain(format!(
                "qsqrt:{d} needs a square-free d >= 2"
            )));
        }
        Ok(Domain::QuadraticField(d))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Domain::PrimeField(p) => *p,
            _ => 0,
        }
    }

    /// Every supported domain is a field; kept as a query so that callers
    /// state the requirement explicitly.
    pub fn is_field(&self) -> bool {
        true
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Domain::PrimeField(_) => Coeff::Fp(0),
            Domain::Rationals => Coeff::Q(BigRational::zero()),
            Domain::QuadraticField(_) => Coeff::Quad(BigRational::zero(), BigRational::zero()),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coeff {
        match self {
            Domain::PrimeField(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Coeff::Fp(r.to_u64().expect("residue fits in u64"))
            }
            Domain::Rationals => Coeff::Q(BigRational::from_integer(n.clone())),
            Domain::QuadraticField(_) => {
                Coeff::Quad(BigRational::from_integer(n.clone()), BigRational::zero())
            }
        }
    }

    /// Maps `num/den` into the domain.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Coeff> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Domain::PrimeField(_) => {
                let d = self.from_bigint(den);
                if d.is_zero() {
                    return Err(Error::NotInvertible(format!("{den}")));
                }
                Ok(self.mul(&self.from_bigint(num), &self.inv(&d)?))
            }
            Domain::Rationals => Ok(Coeff::Q(BigRational::new(num.clone(), den.clone()))),
            Domain::QuadraticField(_) => Ok(Coeff::Quad(
                BigRational::new(num.clone(), den.clone()),
                BigRational::zero(),
            )),
        }
    }

    /// `√d`, for quadratic fields only.
    pub fn sqrt_generator(&self) -> Option<Coeff> {
        match self {
            Domain::QuadraticField(_) => Some(Coeff::Quad(BigRational::zero(), BigRational::one())),
            _ => None,
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Domain::PrimeField(p), Coeff::Fp(x), Coeff::Fp(y)) => Coeff::Fp((x + y) % p),
            (Domain::Rationals, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x + y),
            (Domain::QuadraticField(_), Coeff::Quad(a0, a1), Coeff::Quad(b0, b1)) => {
                Coeff::Quad(a0 + b0, a1 + b1)
            }
            _ => mismatch(self, a, b),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (Domain::PrimeField(p), Coeff::Fp(x)) => Coeff::Fp((p - x) % p),
            (Domain::Rationals, Coeff::Q(x)) => Coeff::Q(-x),
            (Domain::QuadraticField(_), Coeff::Quad(x0, x1)) => Coeff::Quad(-x0, -x1),
            _ => mismatch(self, a, a),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Domain::PrimeField(p), Coeff::Fp(x), Coeff::Fp(y)) => Coeff::Fp(mul_mod(*x, *y, *p)),
            (Domain::Rationals, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x * y),
            (Domain::QuadraticField(d), Coeff::Quad(a0, a1), Coeff::Quad(b0, b1)) => {
                let d = BigRational::from_integer(BigInt::from(*d));
                Coeff::Quad(a0 * b0 + d * (a1 * b1), a0 * b1 + a1 * b0)
            }
            _ => mismatch(self, a, b),
        }
    }

    pub fn inv(&self, a: &Coeff) -> Result<Coeff> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, a) {
            (Domain::PrimeField(p), Coeff::Fp(x)) => {
                Coeff::Fp(inv_mod(*x, *p).ok_or(Error::DivisionByZero)?)
            }
            (Domain::Rationals, Coeff::Q(x)) => Coeff::Q(x.recip()),
            (Domain::QuadraticField(d), Coeff::Quad(a0, a1)) => {
                // (a0 + a1√d)^{-1} = (a0 - a1√d) / (a0² - d·a1²)
                let d = BigRational::from_integer(BigInt::from(*d));
                let norm = a0 * a0 - d * (a1 * a1);
                Coeff::Quad(a0 / &norm, -(a1 / &norm))
            }
            _ => mismatch(self, a, a),
        })
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Result<Coeff> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Coeff, mut exp: u64) -> Coeff {
        if let (Domain::PrimeField(p), Coeff::Fp(x)) = (self, a) {
            return Coeff::Fp(pow_mod(*x, exp, *p));
        }
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `1/m!`, defined when `m! ` is a unit: characteristic zero or `m < p`.
    pub fn factorial_unit(&self, m: u64) -> Result<Coeff> {
        let char = self.characteristic();
        if char != 0 && m >= char {
            return Err(Error::NotInvertible(format!("{m}! in F_{char}")));
        }
        let mut f = self.one();
        for k in 2..=m {
            f = self.mul(&f, &self.from_i64(k as i64));
        }
        self.inv(&f)
    }

    /// Uniform random element; `nonzero` excludes zero.
    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R, nonzero: bool) -> Coeff {
        loop {
            let c = match self {
                Domain::PrimeField(p) => Coeff::Fp(rng.gen_range(0..*p)),
                Domain::Rationals => Coeff::Q(small_rational(rng)),
                Domain::QuadraticField(_) => Coeff::Quad(small_rational(rng), small_rational(rng)),
            };
            if !nonzero || !c.is_zero() {
                return c;
            }
        }
    }
}

fn small_rational<R: rand::Rng + ?Sized>(rng: &mut R) -> BigRational {
    let num: i64 = rng.gen_range(-9..=9);
    let den: i64 = rng.gen_range(1..=4);
    BigRational::new(num.into(), den.into())
}

#[cold]
fn mismatch(d: &Domain, a: &Coeff, b: &Coeff) -> ! {
    panic!("coefficients {a:?}, {b:?} do not belong to domain {d}")
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Fp(x) => *x == 0,
            Coeff::Q(x) => x.is_zero(),
            Coeff::Quad(a, b) => a.is_zero() && b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Fp(x) => *x == 1,
            Coeff::Q(x) => x.is_one(),
            Coeff::Quad(a, b) => a.is_one() && b.is_zero(),
        }
    }

    /// Rational parts `(a, b)` of `a + b√d`; prime-field values are lifted to
    /// their representative in `[0, p)`.
    pub fn rational_parts(&self) -> (BigRational, BigRational) {
        match self {
            Coeff::Fp(x) => (BigRational::from_integer((*x).into()), BigRational::zero()),
            Coeff::Q(x) => (x.clone(), BigRational::zero()),
            Coeff::Quad(a, b) => (a.clone(), b.clone()),
        }
    }
}

/// Formats a nonnegative rational as `n` or `n/d`.
pub(crate) fn fmt_abs_rational(q: &BigRational) -> String {
    let q = q.abs();
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Fp(x) => write!(f, "{x}"),
            Coeff::Q(x) => write!(f, "{x}"),
            Coeff::Quad(a, b) => write!(f, "{a}+{b}*t"),
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::PrimeField(p) => write!(f, "fp:{p}"),
            Domain::Rationals => write!(f, "q"),
            Domain::QuadraticField(d) => write!(f, "qsqrt:{d}"),
        }
    }
}

impl FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "q" {
            return Ok(Domain::Rationals);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::InvalidDomain(s.to_string()))?;
            return Domain::prime_field(p);
        }
        if let Some(d) = s.strip_prefix("qsqrt:") {
            let d: i64 = d
                .parse()
                .map_err(|_| Error::InvalidDomain(s.to_string()))?;
            return Domain::quadratic(d);
        }
        Err(Error::InvalidDomain(s.to_string()))
    }
}

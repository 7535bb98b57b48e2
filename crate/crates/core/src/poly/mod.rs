//! Sparse exact multivariate polynomials.

mod monomial;
mod parse;
mod wp;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::arith::{fmt_abs_rational, Coeff, Domain};

pub use monomial::Monomial;
pub use parse::parse_poly;
pub use wp::{frobenius_power, wp, wp_additive, wp_with_cap, DEFAULT_TERM_CAP};

/// A polynomial in `x1..xn` over a [`Domain`].
///
/// Terms are kept in a map keyed by graded-lex monomial order with no zero
/// coefficients, so two polynomials are equal iff their term maps are.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    domain: Domain,
    nvars: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Polynomial {
    pub fn zero(domain: Domain, nvars: usize) -> Self {
        Polynomial {
            domain,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(domain: Domain, nvars: usize, c: Coeff) -> Self {
        Self::term(domain, Monomial::one(nvars), c)
    }

    pub fn one(domain: Domain, nvars: usize) -> Self {
        Self::constant(domain, nvars, domain.one())
    }

    /// The variable `x_{index+1}`.
    pub fn var(domain: Domain, nvars: usize, index: usize) -> Self {
        Self::term(domain, Monomial::var(nvars, index), domain.one())
    }

    pub fn term(domain: Domain, m: Monomial, c: Coeff) -> Self {
        let mut p = Self::zero(domain, m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(
        domain: Domain,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Coeff)>,
    ) -> Self {
        let mut p = Self::zero(domain, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Coeff> {
        self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(|| self.domain.zero())
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest total degree of any term.
    pub fn order(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.order() == self.total_degree()
    }

    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = self.domain.add(o.get(), &c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.domain, self.nvars);
        }
        Polynomial {
            domain: self.domain,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), self.domain.mul(a, c)))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        Polynomial::from_terms(
            self.domain,
            self.nvars,
            self.terms
                .iter()
                .map(|(k, a)| (k.mul(m), self.domain.mul(a, c))),
        )
    }

    /// Product keeping only monomials accepted by `keep`; the filter is
    /// applied before accumulation, so it realizes multiplication modulo a
    /// monomial ideal.
    pub fn mul_filtered(&self, other: &Polynomial, keep: impl Fn(&Monomial) -> bool) -> Polynomial {
        self.check_compatible(other);
        let mut out = Polynomial::zero(self.domain, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if keep(&m) {
                    out.add_term(m, self.domain.mul(ca, cb));
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u64) -> Polynomial {
        self.pow_filtered(k, |_| true)
    }

    pub fn pow_filtered(&self, mut k: u64, keep: impl Fn(&Monomial) -> bool + Copy) -> Polynomial {
        let mut acc = Polynomial::one(self.domain, self.nvars);
        acc.retain(keep);
        let mut base = self.clone();
        base.retain(keep);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_filtered(&base, keep);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_filtered(&base, keep);
            }
        }
        acc
    }

    pub fn retain(&mut self, keep: impl Fn(&Monomial) -> bool) {
        self.terms.retain(|m, _| keep(m));
    }

    /// Drops every monomial divisible by some `x_j^{bounds[j]}`.
    pub fn truncate(&self, bounds: &[u32]) -> Polynomial {
        let mut out = self.clone();
        out.retain(|m| below_bounds(m, bounds));
        out
    }

    /// Sets the variables flagged in `zeroed` to zero.
    pub fn restrict(&self, zeroed: &[bool]) -> Polynomial {
        let mut out = self.clone();
        out.retain(|m| m.support().all(|i| !zeroed[i]));
        out
    }

    /// Re-indexes variables: `x_i ↦ x_{map[i]}` in a ring with `nvars` variables.
    pub fn rename(&self, nvars: usize, map: &[usize]) -> Polynomial {
        Polynomial::from_terms(
            self.domain,
            nvars,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0; nvars];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[map[i]] += x;
                }
                (Monomial::new(e), c.clone())
            }),
        )
    }

    /// `f(images)`, computing products with `mul` (which may reduce).
    pub fn substitute(
        &self,
        images: &[Polynomial],
        target_nvars: usize,
        mul: impl Fn(&Polynomial, &Polynomial) -> Polynomial,
    ) -> Polynomial {
        assert_eq!(images.len(), self.nvars);
        let domain = self.domain;
        let mut out = Polynomial::zero(domain, target_nvars);
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|_| vec![Polynomial::one(domain, target_nvars)])
            .collect();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(domain, target_nvars, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = mul(powers[i].last().unwrap(), &images[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    t = mul(&t, &powers[i][e as usize]);
                }
            }
            out = &out + &t;
        }
        out
    }

    fn check_compatible(&self, other: &Polynomial) {
        assert_eq!(self.domain, other.domain, "domain mismatch");
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
    }
}

pub(crate) fn below_bounds(m: &Monomial, bounds: &[u32]) -> bool {
    m.exponents().iter().zip(bounds).all(|(e, b)| e < b)
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_compatible(rhs);
        let (mut big, small) = if self.len() >= rhs.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            domain: self.domain,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.domain.neg(c)))
                .collect(),
        }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), self.domain.neg(c));
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.mul_filtered(rhs, |_| true)
    }
}

/// One printed summand: sign, absolute rational coefficient, whether `t`
/// appears, and the monomial.
struct Piece<'a> {
    negative: bool,
    magnitude: num_rational::BigRational,
    with_t: bool,
    monomial: &'a Monomial,
}

/// Canonical form: descending graded-lex, parseable by [`parse_poly`].
/// Quadratic-field coefficients `a + b√d` print as `a*m + b*t*m`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut pieces = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            match c {
                Coeff::Fp(v) => pieces.push(Piece {
                    negative: false,
                    magnitude: num_rational::BigRational::from_integer((*v).into()),
                    with_t: false,
                    monomial: m,
                }),
                Coeff::Q(q) => pieces.push(Piece {
                    negative: q.is_negative(),
                    magnitude: q.abs(),
                    with_t: false,
                    monomial: m,
                }),
                Coeff::Quad(a, b) => {
                    for (part, with_t) in [(a, false), (b, true)] {
                        if !part.is_zero() {
                            pieces.push(Piece {
                                negative: part.is_negative(),
                                magnitude: part.abs(),
                                with_t,
                                monomial: m,
                            });
                        }
                    }
                }
            }
        }
        for (i, piece) in pieces.iter().enumerate() {
            match (i, piece.negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            let unit = num_traits::One::is_one(&piece.magnitude);
            if !unit || (!piece.with_t && piece.monomial.is_one()) {
                factors.push(fmt_abs_rational(&piece.magnitude));
            }
            if piece.with_t {
                factors.push("t".into());
            }
            if !piece.monomial.is_one() {
                factors.push(piece.monomial.to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

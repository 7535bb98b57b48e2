use crate::arith::{Coeff, Domain};
use crate::artin::QuotientFrame;
use crate::combinat::{binom_exact, binom_mod_p};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};

/// Span of `x^{[m]} = x1^{[m1]}…xn^{[mn]}` with `m_j < caps[j]`, multiplied by
/// `x^{[m]}·x^{[m']} = Π C(m_j + m'_j, m_j)·x^{[m+m']}` and zero past the caps.
///
/// Elements are stored as polynomials whose exponents are read as divided
/// power exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedDpAlgebra {
    domain: Domain,
    caps: Vec<u32>,
}

impl TruncatedDpAlgebra {
    pub fn new(domain: Domain, caps: Vec<u32>) -> Result<Self> {
        if caps.iter().any(|&c| c == 0) {
            return Err(Error::InvalidBounds("caps must be at least 1".into()));
        }
        Ok(TruncatedDpAlgebra { domain, caps })
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn nvars(&self) -> usize {
        self.caps.len()
    }

    /// The basis element `x^{[m]}`.
    pub fn basis_element(&self, m: Vec<u32>) -> Polynomial {
        Polynomial::term(self.domain, Monomial::new(m), self.domain.one())
    }

    fn binom(&self, m: u64, n: u64) -> Coeff {
        match self.domain.characteristic() {
            0 => self.domain.from_bigint(&binom_exact(m, n).into()),
            p => binom_mod_p(m, n, p).expect("characteristic is prime"),
        }
    }

    pub fn product(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        let d = self.domain;
        let mut out = Polynomial::zero(d, self.nvars());
        for (ma, ca) in a.terms() {
            'pairs: for (mb, cb) in b.terms() {
                let mut c = d.mul(ca, cb);
                let mut e = Vec::with_capacity(self.nvars());
                for j in 0..self.nvars() {
                    let (x, y) = (ma.exponents()[j], mb.exponents()[j]);
                    if x + y >= self.caps[j] {
                        continue 'pairs;
                    }
                    c = d.mul(&c, &self.binom((x + y) as u64, x as u64));
                    e.push(x + y);
                }
                out.add_term(Monomial::new(e), c);
            }
        }
        out
    }

    /// The algebra map to `k[x]/(x^caps)` sending `x^{[m]}` to `x^m / m!`.
    /// Needs every `m_j!` with `m_j < caps[j]` to be invertible.
    pub fn to_frame(&self, a: &Polynomial, frame: &QuotientFrame) -> Result<Polynomial> {
        if frame.bounds() != self.caps.as_slice() || frame.domain() != self.domain {
            return Err(Error::Mismatch("frame does not match the truncated algebra".into()));
        }
        let d = self.domain;
        let mut out = Polynomial::zero(d, self.nvars());
        for (m, c) in a.terms() {
            let mut scale = c.clone();
            for &e in m.exponents() {
                scale = d.mul(&scale, &d.factorial_unit(e as u64)?);
            }
            out.add_term(m.clone(), scale);
        }
        Ok(frame.normal_form(&out))
    }
}

/// Product in a [`TruncatedDpAlgebra`].
pub fn dp_truncated_product(alg: &TruncatedDpAlgebra, a: &Polynomial, b: &Polynomial) -> Polynomial {
    alg.product(a, b)
}

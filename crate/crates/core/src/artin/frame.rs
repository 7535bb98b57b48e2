use std::collections::BTreeMap;

use super::echelon::{Echelon, SparseVec};
use crate::arith::{Coeff, Domain};
use crate::error::{Error, Result};
use crate::poly::{below_bounds, Monomial, Polynomial};

/// Default limit on the number of basis monomials of a built frame.
pub const DEFAULT_BASIS_CAP: usize = 1 << 20;

/// Description of `k[x1..xn]/((x1^i1,…,xn^in) + I)` before any linear
/// algebra is done. Generators are stored reduced modulo the pure powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameSpec {
    domain: Domain,
    nvars: usize,
    bounds: Vec<u32>,
    gens: Vec<Polynomial>,
}

impl FrameSpec {
    pub fn new(domain: Domain, nvars: usize, bounds: Vec<u32>, gens: Vec<Polynomial>) -> Result<Self> {
        if !domain.is_field() {
            return Err(Error::NotAField);
        }
        if bounds.len() != nvars {
            return Err(Error::InvalidBounds(format!(
                "expected {nvars} bounds, got {}",
                bounds.len()
            )));
        }
        if bounds.iter().any(|&b| b == 0) {
            return Err(Error::InvalidBounds("frame bounds must be at least 1".into()));
        }
        let mut reduced = Vec::with_capacity(gens.len());
        for g in gens {
            if g.domain() != domain || g.nvars() != nvars {
                return Err(Error::Mismatch(format!(
                    "generator over {} in {} variables, frame over {domain} in {nvars}",
                    g.domain(),
                    g.nvars()
                )));
            }
            let g = g.truncate(&bounds);
            if !g.is_zero() {
                reduced.push(g);
            }
        }
        Ok(FrameSpec {
            domain,
            nvars,
            bounds,
            gens: reduced,
        })
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn basis_size(&self) -> u128 {
        self.bounds.iter().map(|&b| b as u128).product()
    }

    /// The same bounds without extra generators.
    pub fn ambient(&self) -> FrameSpec {
        FrameSpec {
            gens: Vec::new(),
            ..self.clone()
        }
    }

    /// Truncated product modulo the pure powers only.
    pub fn mul_truncated(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.mul_filtered(b, |m| below_bounds(m, &self.bounds))
    }

    /// Enumerates the basis and eliminates the ideal subspace.
    pub fn build(&self, cap: usize) -> Result<QuotientFrame> {
        let size = self.basis_size();
        if size > cap as u128 {
            return Err(Error::ResourceCap { size, cap });
        }
        let size = size as usize;
        let mut strides = vec![1usize; self.nvars];
        for j in (0..self.nvars.saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * self.bounds[j + 1] as usize;
        }
        let mut frame = QuotientFrame {
            spec: self.clone(),
            strides,
            size,
            ideal: Echelon::new(self.domain),
        };
        let mut ideal = Echelon::new(self.domain);
        for g in &self.gens {
            for i in 0..size {
                let m = frame.monomial_at(i);
                let v = frame.to_vec(&g.mul_monomial(&m, &self.domain.one()));
                if !v.is_empty() {
                    ideal.insert(&v);
                }
            }
        }
        frame.ideal = ideal.into_reduced();
        Ok(frame)
    }
}

/// Outcome of an ideal membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub verdict: bool,
    /// The query reduced against the ideal subspace; zero iff `verdict`.
    pub remainder: Polynomial,
}

/// A frame with its monomial basis indexed in lex order (`x1` most
/// significant) and the ideal subspace in reduced echelon form.
#[derive(Clone, Debug)]
pub struct QuotientFrame {
    spec: FrameSpec,
    strides: Vec<usize>,
    size: usize,
    ideal: Echelon,
}

impl QuotientFrame {
    pub fn new(domain: Domain, nvars: usize, bounds: Vec<u32>, gens: Vec<Polynomial>) -> Result<Self> {
        FrameSpec::new(domain, nvars, bounds, gens)?.build(DEFAULT_BASIS_CAP)
    }

    /// A frame whose ideal subspace is given directly. `ideal` must be closed
    /// under multiplication by the variables.
    pub(crate) fn with_subspace(ambient: &QuotientFrame, gens: Vec<Polynomial>, ideal: Echelon) -> Self {
        QuotientFrame {
            spec: FrameSpec {
                gens,
                ..ambient.spec.clone()
            },
            strides: ambient.strides.clone(),
            size: ambient.size,
            ideal: ideal.into_reduced(),
        }
    }

    pub fn spec(&self) -> &FrameSpec {
        &self.spec
    }

    pub fn domain(&self) -> Domain {
        self.spec.domain
    }

    pub fn nvars(&self) -> usize {
        self.spec.nvars
    }

    pub fn bounds(&self) -> &[u32] {
        &self.spec.bounds
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.spec.gens
    }

    pub fn basis_size(&self) -> usize {
        self.size
    }

    pub fn ideal(&self) -> &Echelon {
        &self.ideal
    }

    pub fn ideal_rank(&self) -> usize {
        self.ideal.rank()
    }

    pub fn length(&self) -> usize {
        self.size - self.ideal.rank()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        if !below_bounds(m, &self.spec.bounds) {
            return None;
        }
        Some(m.exponents().iter().zip(&self.strides).map(|(&e, &s)| e as usize * s).sum())
    }

    pub fn monomial_at(&self, mut index: usize) -> Monomial {
        let mut e = vec![0u32; self.spec.nvars];
        for (j, &s) in self.strides.iter().enumerate() {
            e[j] = (index / s) as u32;
            index %= s;
        }
        Monomial::new(e)
    }

    /// Coordinates modulo the pure powers.
    pub fn to_vec(&self, f: &Polynomial) -> SparseVec {
        let d = self.domain();
        let mut acc: BTreeMap<usize, Coeff> = BTreeMap::new();
        for (m, c) in f.terms() {
            if let Some(i) = self.index_of(m) {
                let slot = acc.entry(i).or_insert_with(|| d.zero());
                *slot = d.add(slot, c);
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn to_poly(&self, v: &[(usize, Coeff)]) -> Polynomial {
        Polynomial::from_terms(
            self.domain(),
            self.nvars(),
            v.iter().map(|(i, c)| (self.monomial_at(*i), c.clone())),
        )
    }

    pub fn reduce_vec(&self, v: &[(usize, Coeff)]) -> SparseVec {
        self.ideal.reduce(v)
    }

    /// The unique representative of `f` supported on standard monomials.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.to_poly(&self.reduce_vec(&self.to_vec(f)))
    }

    pub fn is_member(&self, f: &Polynomial) -> MembershipCertificate {
        let remainder = self.normal_form(f);
        MembershipCertificate {
            verdict: remainder.is_zero(),
            remainder,
        }
    }

    /// Product in the quotient algebra, returned in normal form.
    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.normal_form(&self.spec.mul_truncated(a, b))
    }

    /// Basis monomials that are not pivots of the ideal subspace; they form a
    /// basis of the quotient.
    pub fn standard_monomials(&self) -> Vec<Monomial> {
        (0..self.size)
            .filter(|&i| !self.ideal.is_pivot(i))
            .map(|i| self.monomial_at(i))
            .collect()
    }

    /// Dimension of `{a : a·x_j ∈ ideal for every j}` modulo the ideal.
    pub fn socle_dim(&self) -> usize {
        let standard: Vec<usize> = (0..self.size).filter(|&i| !self.ideal.is_pivot(i)).collect();
        let d = self.domain();
        let mut ech = Echelon::new(d);
        for &s in &standard {
            let m = self.monomial_at(s);
            let mut row: SparseVec = Vec::new();
            for j in 0..self.nvars() {
                let shifted = Polynomial::term(d, m.mul(&Monomial::var(self.nvars(), j)), d.one());
                let nf = self.reduce_vec(&self.to_vec(&shifted));
                row.extend(nf.into_iter().map(|(c, x)| (j * self.size + c, x)));
            }
            ech.insert(&row);
        }
        standard.len() - ech.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn frame(d: Domain, n: usize, bounds: &[u32], gens: &[&str]) -> QuotientFrame {
        let gens = gens.iter().map(|g| parse_poly(g, n, d).unwrap()).collect();
        QuotientFrame::new(d, n, bounds.to_vec(), gens).unwrap()
    }

    #[test]
    fn koblitz_frame_sizes() {
        let f2 = Domain::PrimeField(2);
        let b0 = frame(f2, 6, &[2; 6], &[]);
        assert_eq!(b0.basis_size(), 64);
        assert_eq!(b0.length(), 64);
        let a0 = frame(f2, 6, &[2; 6], &["x1*x2 + x3*x4 + x5*x6"]);
        assert_eq!(a0.ideal_rank(), 28);
        assert_eq!(a0.length(), 36);
    }

    #[test]
    fn small_lengths() {
        let f2 = Domain::PrimeField(2);
        let f3 = Domain::PrimeField(3);
        let a = frame(f2, 1, &[2], &["x1"]);
        assert_eq!((a.ideal_rank(), a.length()), (1, 1));
        assert_eq!(frame(f3, 1, &[3], &["x1^2"]).length(), 2);
    }

    #[test]
    fn membership() {
        let f2 = Domain::PrimeField(2);
        let a0 = frame(f2, 6, &[2; 6], &["x1*x2 + x3*x4 + x5*x6"]);
        let sq = parse_poly("x1^2", 6, f2).unwrap();
        assert!(a0.is_member(&sq).verdict);
        let w = parse_poly("x1*x2*x3*x4 + x1*x2*x5*x6 + x3*x4*x5*x6", 6, f2).unwrap();
        let cert = a0.is_member(&w);
        assert!(!cert.verdict);
        assert!(!cert.remainder.is_zero());
        // the remainder differs from the query by an ideal element
        assert!(a0.is_member(&(&w - &cert.remainder)).verdict);
    }

    #[test]
    fn socle_dimensions() {
        let f2 = Domain::PrimeField(2);
        let q = Domain::Rationals;
        assert_eq!(frame(q, 3, &[2, 3, 4], &[]).socle_dim(), 1);
        assert_eq!(frame(f2, 2, &[2, 2], &["x1*x2"]).socle_dim(), 2);
        assert_eq!(frame(f2, 2, &[2, 2], &["x1", "x2"]).socle_dim(), 1);
    }

    #[test]
    fn rejects_bad_specs() {
        let f2 = Domain::PrimeField(2);
        assert!(matches!(
            FrameSpec::new(f2, 2, vec![2], vec![]),
            Err(Error::InvalidBounds(_))
        ));
        let big = FrameSpec::new(f2, 21, vec![2; 21], vec![]).unwrap();
        assert!(matches!(big.build(DEFAULT_BASIS_CAP), Err(Error::ResourceCap { .. })));
    }

    #[test]
    fn index_round_trip() {
        let a = frame(Domain::Rationals, 3, &[2, 3, 4], &[]);
        for i in 0..a.basis_size() {
            assert_eq!(a.index_of(&a.monomial_at(i)), Some(i));
        }
        assert_eq!(a.index_of(&Monomial::new(vec![2, 0, 0])), None);
    }
}

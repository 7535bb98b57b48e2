//! Buchberger's algorithm over exact fields.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::arith::{Coeff, Domain};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Degrevlex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exponents().cmp(b.exponents()),
            MonomialOrder::Degrevlex => a.degree().cmp(&b.degree()).then_with(|| {
                // the smaller exponent in the last differing variable wins
                for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    fn key(&self, m: &Monomial) -> Key {
        let e = m.exponents();
        Key(match self {
            MonomialOrder::Lex => e.iter().map(|&x| x as i64).collect(),
            MonomialOrder::Degrevlex => std::iter::once(m.degree() as i64)
                .chain(e.iter().rev().map(|&x| -(x as i64)))
                .collect(),
        })
    }

    fn monomial(&self, k: &Key) -> Monomial {
        Monomial::new(match self {
            MonomialOrder::Lex => k.0.iter().map(|&x| x as u32).collect(),
            MonomialOrder::Degrevlex => k.0[1..].iter().rev().map(|&x| (-x) as u32).collect(),
        })
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonomialOrder::Degrevlex => "degrevlex",
            MonomialOrder::Lex => "lex",
        })
    }
}

impl FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "degrevlex" => Ok(MonomialOrder::Degrevlex),
            "lex" => Ok(MonomialOrder::Lex),
            other => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown monomial order '{other}'"),
            }),
        }
    }
}

/// Sort key whose natural `Ord` matches a monomial order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Key(Vec<i64>);

/// Working representation: terms keyed in the chosen order.
#[derive(Clone, Debug)]
struct OrdPoly {
    terms: BTreeMap<Key, Coeff>,
}

impl OrdPoly {
    fn leading(&self) -> Option<(&Key, &Coeff)> {
        self.terms.iter().next_back()
    }
}

/// Quotient dimension of a polynomial ring by an ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientLength {
    Finite(u64),
    Infinite,
}

/// Reduced, monic Gröbner basis.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    domain: Domain,
    nvars: usize,
    elements: Vec<Polynomial>,
    leading: Vec<Monomial>,
}

struct Engine {
    order: MonomialOrder,
    domain: Domain,
    nvars: usize,
}

impl Engine {
    fn lift(&self, f: &Polynomial) -> OrdPoly {
        OrdPoly {
            terms: f.terms().map(|(m, c)| (self.order.key(m), c.clone())).collect(),
        }
    }

    fn lower(&self, f: &OrdPoly) -> Polynomial {
        Polynomial::from_terms(
            self.domain,
            self.nvars,
            f.terms.iter().map(|(k, c)| (self.order.monomial(k), c.clone())),
        )
    }

    fn monic(&self, mut f: OrdPoly) -> OrdPoly {
        if let Some((_, lc)) = f.leading() {
            let inv = self.domain.inv(lc).expect("nonzero leading coefficient");
            for c in f.terms.values_mut() {
                *c = self.domain.mul(c, &inv);
            }
        }
        f
    }

    /// `acc -= c·m·g`.
    fn sub_scaled(&self, acc: &mut BTreeMap<Key, Coeff>, c: &Coeff, m: &Monomial, g: &OrdPoly) {
        let d = self.domain;
        for (k, x) in &g.terms {
            let key = self.order.key(&self.order.monomial(k).mul(m));
            let delta = d.mul(c, x);
            match acc.get_mut(&key) {
                Some(slot) => {
                    *slot = d.sub(slot, &delta);
                    if slot.is_zero() {
                        acc.remove(&key);
                    }
                }
                None => {
                    acc.insert(key, d.neg(&delta));
                }
            }
        }
    }

    /// Full reduction of `f` by monic `basis`.
    fn reduce(&self, f: &OrdPoly, basis: &[OrdPoly], leads: &[Monomial]) -> OrdPoly {
        let mut acc = f.terms.clone();
        let mut remainder = BTreeMap::new();
        while let Some((k, c)) = acc.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) {
            let m = self.order.monomial(&k);
            let divisor = leads.iter().position(|l| l.divides(&m));
            match divisor {
                Some(i) => {
                    let q = leads[i].divide_into(&m).expect("divides");
                    self.sub_scaled(&mut acc, &c, &q, &basis[i]);
                }
                None => {
                    acc.remove(&k);
                    remainder.insert(k, c);
                }
            }
        }
        OrdPoly { terms: remainder }
    }

    fn s_poly(&self, f: &OrdPoly, g: &OrdPoly) -> OrdPoly {
        let lf = self.order.monomial(f.leading().expect("nonzero").0);
        let lg = self.order.monomial(g.leading().expect("nonzero").0);
        let l = lf.lcm(&lg);
        let mut acc = BTreeMap::new();
        let one = self.domain.one();
        // both are monic: S = (l/lf)·f - (l/lg)·g
        self.sub_scaled(&mut acc, &self.domain.neg(&one), &lf.divide_into(&l).unwrap(), f);
        self.sub_scaled(&mut acc, &one, &lg.divide_into(&l).unwrap(), g);
        OrdPoly { terms: acc }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    lcm_degree: u64,
    seq: usize,
    i: usize,
    j: usize,
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Pairs are processed lowest lcm degree first, ties broken by creation
/// order. Pairs with coprime leading monomials and pairs covered by the
/// chain criterion are skipped.
pub fn buchberger(gens: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis> {
    let Some(first) = gens.first() else {
        return Err(Error::InvalidContext(
            "an empty generator list does not determine the ring; use buchberger_in".into(),
        ));
    };
    buchberger_in(first.domain(), first.nvars(), gens, order)
}

/// [`buchberger`] with the ring given explicitly, so `gens` may be empty.
pub fn buchberger_in(
    domain: Domain,
    nvars: usize,
    gens: &[Polynomial],
    order: MonomialOrder,
) -> Result<GroebnerBasis> {
    if !domain.is_field() {
        return Err(Error::NotAField);
    }
    for g in gens {
        if g.domain() != domain || g.nvars() != nvars {
            return Err(Error::Mismatch("generators live in different rings".into()));
        }
    }
    let eng = Engine { order, domain, nvars };
    let mut basis: Vec<OrdPoly> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    let mut pending: Vec<Pair> = Vec::new();
    let mut done: HashSet<(usize, usize)> = HashSet::new();
    let mut seq = 0usize;

    let mut add = |f: OrdPoly,
                   basis: &mut Vec<OrdPoly>,
                   leads: &mut Vec<Monomial>,
                   pending: &mut Vec<Pair>| {
        let f = eng.monic(f);
        let lf = order.monomial(f.leading().unwrap().0);
        let j = basis.len();
        for (i, li) in leads.iter().enumerate() {
            pending.push(Pair {
                lcm_degree: li.lcm(&lf).degree(),
                seq,
                i,
                j,
            });
            seq += 1;
        }
        basis.push(f);
        leads.push(lf);
    };

    for g in gens {
        let r = eng.reduce(&eng.lift(g), &basis, &leads);
        if !r.terms.is_empty() {
            add(r, &mut basis, &mut leads, &mut pending);
        }
    }

    while !pending.is_empty() {
        let idx = (0..pending.len()).min_by_key(|&k| pending[k]).unwrap();
        let pair = pending.swap_remove(idx);
        let (i, j) = (pair.i, pair.j);
        done.insert((i, j));
        if leads[i].is_coprime(&leads[j]) {
            continue;
        }
        let l = leads[i].lcm(&leads[j]);
        let is_done = |a: usize, b: usize| done.contains(&(a.min(b), a.max(b)));
        let chain = (0..basis.len())
            .any(|k| k != i && k != j && leads[k].divides(&l) && is_done(i, k) && is_done(j, k));
        if chain {
            continue;
        }
        let s = eng.s_poly(&basis[i], &basis[j]);
        let r = eng.reduce(&s, &basis, &leads);
        if !r.terms.is_empty() {
            add(r, &mut basis, &mut leads, &mut pending);
        }
    }

    // minimize, then interreduce
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..basis.len() {
        let redundant = (0..basis.len()).any(|k| {
            k != i
                && leads[k].divides(&leads[i])
                && (leads[k] != leads[i] || k < i)
        });
        if !redundant {
            keep.push(i);
        }
    }
    let min_basis: Vec<OrdPoly> = keep.iter().map(|&i| basis[i].clone()).collect();
    let min_leads: Vec<Monomial> = keep.iter().map(|&i| leads[i].clone()).collect();
    let mut reduced: Vec<(Monomial, OrdPoly)> = Vec::new();
    for (i, f) in min_basis.iter().enumerate() {
        let (head_key, head_c) = f.leading().map(|(k, c)| (k.clone(), c.clone())).unwrap();
        let mut tail = f.clone();
        tail.terms.remove(&head_key);
        let others: Vec<OrdPoly> = min_basis
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, g)| g.clone())
            .collect();
        let other_leads: Vec<Monomial> = min_leads
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, m)| m.clone())
            .collect();
        let mut r = eng.reduce(&tail, &others, &other_leads);
        r.terms.insert(head_key, head_c);
        reduced.push((min_leads[i].clone(), eng.monic(r)));
    }
    reduced.sort_by(|a, b| order.cmp(&a.0, &b.0));
    Ok(GroebnerBasis {
        order,
        domain,
        nvars,
        leading: reduced.iter().map(|(m, _)| m.clone()).collect(),
        elements: reduced.iter().map(|(_, f)| eng.lower(f)).collect(),
    })
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Basis elements, sorted by leading monomial ascending.
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    fn engine(&self) -> Engine {
        Engine {
            order: self.order,
            domain: self.domain,
            nvars: self.nvars,
        }
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let eng = self.engine();
        let basis: Vec<OrdPoly> = self.elements.iter().map(|g| eng.lift(g)).collect();
        eng.lower(&eng.reduce(&eng.lift(f), &basis, &self.leading))
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// S-polynomials of every pair, reduced by the basis. All are zero for a
    /// Gröbner basis.
    pub fn s_pair_remainders(&self) -> Vec<Polynomial> {
        let eng = self.engine();
        let basis: Vec<OrdPoly> = self.elements.iter().map(|g| eng.lift(g)).collect();
        let mut out = Vec::new();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let s = eng.s_poly(&basis[i], &basis[j]);
                out.push(eng.lower(&eng.reduce(&s, &basis, &self.leading)));
            }
        }
        out
    }

    /// Number of standard monomials, found by walking up from `1` through
    /// monomials divisible by no leading monomial. Fails with
    /// `ResourceCap` past `cap` monomials.
    pub fn quotient_length(&self, cap: usize) -> Result<QuotientLength> {
        if self.leading.iter().any(|m| m.is_one()) {
            return Ok(QuotientLength::Finite(0));
        }
        let bounded = (0..self.nvars)
            .all(|v| self.leading.iter().any(|m| m.pure_power_var() == Some(v)));
        if !bounded {
            return Ok(QuotientLength::Infinite);
        }
        let mut seen: HashSet<Monomial> = HashSet::new();
        let mut queue = VecDeque::from([Monomial::one(self.nvars)]);
        seen.insert(Monomial::one(self.nvars));
        while let Some(m) = queue.pop_front() {
            for v in 0..self.nvars {
                let next = m.mul(&Monomial::var(self.nvars, v));
                if seen.contains(&next) || self.leading.iter().any(|l| l.divides(&next)) {
                    continue;
                }
                if seen.len() >= cap {
                    return Err(Error::ResourceCap {
                        size: seen.len() as u128 + 1,
                        cap,
                    });
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
        Ok(QuotientLength::Finite(seen.len() as u64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn gens(list: &[&str], n: usize, d: Domain) -> Vec<Polynomial> {
        list.iter().map(|s| parse_poly(s, n, d).unwrap()).collect()
    }

    #[test]
    fn orders() {
        let a = Monomial::new(vec![1, 0, 2]);
        let b = Monomial::new(vec![0, 2, 1]);
        assert_eq!(MonomialOrder::Lex.cmp(&a, &b), Ordering::Greater);
        // same degree; last variable: 2 > 1 so a is smaller
        assert_eq!(MonomialOrder::Degrevlex.cmp(&a, &b), Ordering::Less);
        for o in [MonomialOrder::Lex, MonomialOrder::Degrevlex] {
            assert_eq!(o.monomial(&o.key(&a)), a);
        }
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let q = Domain::Rationals;
        let g = gens(&["x1^2", "x2^2"], 2, q);
        let gb = buchberger(&g, MonomialOrder::Degrevlex).unwrap();
        assert_eq!(gb.elements().len(), 2);
        for f in &g {
            assert!(gb.elements().contains(f));
        }
        assert_eq!(gb.quotient_length(1000).unwrap(), QuotientLength::Finite(4));
    }

    #[test]
    fn linear_lex_example() {
        let q = Domain::Rationals;
        let g = gens(&["x1 - x2", "x2^2"], 2, q);
        let gb = buchberger(&g, MonomialOrder::Lex).unwrap();
        let mut got: Vec<String> = gb.elements().iter().map(|f| f.to_string()).collect();
        got.sort();
        assert_eq!(got, vec!["x1 - x2", "x2^2"]);
        assert!(gb.s_pair_remainders().iter().all(Polynomial::is_zero));
    }

    #[test]
    fn lengths_of_tiny_ideals() {
        let q = Domain::Rationals;
        let gb = buchberger(&gens(&["x1"], 1, q), MonomialOrder::Lex).unwrap();
        assert_eq!(gb.quotient_length(10).unwrap(), QuotientLength::Finite(1));
        let gb = buchberger_in(q, 1, &[], MonomialOrder::Lex).unwrap();
        assert_eq!(gb.quotient_length(10).unwrap(), QuotientLength::Infinite);
        let gb = buchberger(&gens(&["0"], 1, q), MonomialOrder::Lex).unwrap();
        assert_eq!(gb.quotient_length(10).unwrap(), QuotientLength::Infinite);
        let gb = buchberger(&gens(&["x1 + 1", "x1"], 1, q), MonomialOrder::Lex).unwrap();
        assert_eq!(gb.quotient_length(10).unwrap(), QuotientLength::Finite(0));
    }

    #[test]
    fn normal_forms() {
        let q = Domain::Rationals;
        let g = gens(&["x1^2"], 2, q);
        let gb = buchberger(&g, MonomialOrder::Degrevlex).unwrap();
        assert!(gb.normal_form(&parse_poly("x1^2*x2", 2, q).unwrap()).is_zero());
        assert_eq!(gb.normal_form(&Polynomial::one(q, 2)), Polynomial::one(q, 2));
        assert!(gb.contains(&g[0]));
    }

    #[test]
    fn koblitz_lengths() {
        let f2 = Domain::PrimeField(2);
        let q2 = Domain::QuadraticField(2);
        let f2_gens = gens(
            &["x1^2", "x2^2", "x3^2", "x4^2", "x5^2", "x6^2", "x1*x2 + x3*x4 + x5*x6"],
            6,
            f2,
        );
        let q2_gens = gens(
            &["x1^2 + t*x4*x5*x6", "x2^2 + t*x3", "x3^2", "x4^2", "x5^2", "x6^2", "x1*x2 + x3*x4 + x5*x6"],
            6,
            q2,
        );
        for order in [MonomialOrder::Degrevlex, MonomialOrder::Lex] {
            for g in [&f2_gens, &q2_gens] {
                let gb = buchberger(g, order).unwrap();
                assert_eq!(gb.quotient_length(1 << 16).unwrap(), QuotientLength::Finite(36));
                assert!(gb.s_pair_remainders().iter().all(Polynomial::is_zero));
            }
        }
    }
}

//! The cross-term polynomial `w_p` and Frobenius powering.
//!
//! For `f = Σ a_j x^{J_j}` with distinct monomials,
//! `w_p(f) = Σ_{Σl_j = p, l_j < p} Π (a_j x^{J_j})^{l_j} / l_j!`,
//! so that `f^p = Σ (a_j x^{J_j})^p + p!·w_p(f)` in characteristic zero.

use std::collections::BTreeMap;

use super::{Monomial, Polynomial};
use crate::arith::{is_prime, Coeff, Domain};
use crate::error::{Error, Result};

/// Default bound on the number of terms for composition enumeration.
pub const DEFAULT_TERM_CAP: usize = 16;

fn check_prime_and_char(domain: Domain, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    let ch = domain.characteristic();
    if ch != 0 && ch != p {
        return Err(Error::WrongCharacteristic(format!(
            "w_{p} needs characteristic 0 or {p}, domain is {domain}"
        )));
    }
    Ok(())
}

/// `w_p(f)` by enumerating compositions, with the default term cap.
pub fn wp(f: &Polynomial, p: u64) -> Result<Polynomial> {
    wp_with_cap(f, p, DEFAULT_TERM_CAP)
}

/// `w_p(f)` by backtracking over compositions `(l_1, …, l_m)` of `p` with
/// every `l_j < p`. Each composition contributes a single term.
pub fn wp_with_cap(f: &Polynomial, p: u64, cap: usize) -> Result<Polynomial> {
    check_prime_and_char(f.domain(), p)?;
    if f.len() > cap {
        return Err(Error::TooManyTerms {
            terms: f.len(),
            cap,
        });
    }
    let d = f.domain();
    let pl = p as usize;
    // powers[j][l] = (x^{J_j l}, a_j^l / l!) for l < p
    let mut powers: Vec<Vec<(Monomial, Coeff)>> = Vec::with_capacity(f.len());
    for (m, a) in f.terms() {
        let mut row = Vec::with_capacity(pl);
        for l in 0..pl {
            let c = d.mul(&d.pow(a, l as u64), &d.factorial_unit(l as u64)?);
            row.push((m.pow(l as u32), c));
        }
        powers.push(row);
    }
    let mut acc = BTreeMap::new();
    let start = (Monomial::one(f.nvars()), d.one());
    compositions(&powers, 0, pl, start, d, &mut acc);
    Ok(Polynomial::from_terms(d, f.nvars(), acc))
}

fn compositions(
    powers: &[Vec<(Monomial, Coeff)>],
    j: usize,
    remaining: usize,
    (mono, coeff): (Monomial, Coeff),
    d: Domain,
    acc: &mut BTreeMap<Monomial, Coeff>,
) {
    let p = powers.first().map_or(0, Vec::len);
    if j == powers.len() {
        if remaining == 0 {
            let entry = acc.entry(mono).or_insert_with(|| d.zero());
            *entry = d.add(entry, &coeff);
        }
        return;
    }
    // every remaining slot holds at most p - 1
    if remaining > (p - 1) * (powers.len() - j) {
        return;
    }
    for l in 0..=remaining.min(p - 1) {
        let (m, c) = &powers[j][l];
        compositions(
            powers,
            j + 1,
            remaining - l,
            (mono.mul(m), d.mul(&coeff, c)),
            d,
            acc,
        );
    }
}

/// `w_p(f)` through the splitting identity
/// `w_p(g + h) = w_p(g) + w_p(h) + Σ_{i=1}^{p-1} g^i h^{p-i} / (i!(p-i)!)`
/// applied to halves of the term list. `mul` supplies the ring product, so
/// this also computes `w_p` modulo an ideal when `mul` reduces. There is no
/// term cap.
pub fn wp_additive(
    f: &Polynomial,
    p: u64,
    mul: &dyn Fn(&Polynomial, &Polynomial) -> Polynomial,
) -> Result<Polynomial> {
    check_prime_and_char(f.domain(), p)?;
    let d = f.domain();
    let weights: Vec<Coeff> = (1..p)
        .map(|i| Ok(d.mul(&d.factorial_unit(i)?, &d.factorial_unit(p - i)?)))
        .collect::<Result<_>>()?;
    let terms: Vec<(Monomial, Coeff)> = f.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    Ok(split_rec(&terms, f, p, &weights, mul))
}

fn split_rec(
    terms: &[(Monomial, Coeff)],
    like: &Polynomial,
    p: u64,
    weights: &[Coeff],
    mul: &dyn Fn(&Polynomial, &Polynomial) -> Polynomial,
) -> Polynomial {
    let (d, n) = (like.domain(), like.nvars());
    if terms.len() <= 1 {
        return Polynomial::zero(d, n);
    }
    let (left, right) = terms.split_at(terms.len() / 2);
    let g = Polynomial::from_terms(d, n, left.iter().cloned());
    let h = Polynomial::from_terms(d, n, right.iter().cloned());
    let mut out = &split_rec(left, like, p, weights, mul) + &split_rec(right, like, p, weights, mul);
    let g_pows = powers_upto(&g, p - 1, mul);
    let h_pows = powers_upto(&h, p - 1, mul);
    for i in 1..p as usize {
        let cross = mul(&g_pows[i], &h_pows[p as usize - i]);
        out = &out + &cross.scale(&weights[i - 1]);
    }
    out
}

fn powers_upto(
    f: &Polynomial,
    k: u64,
    mul: &dyn Fn(&Polynomial, &Polynomial) -> Polynomial,
) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::one(f.domain(), f.nvars())];
    for _ in 0..k {
        let next = mul(out.last().unwrap(), f);
        out.push(next);
    }
    out
}

/// `f^{p^s}` in characteristic `p`, computed termwise as
/// `Σ a^{p^s} x^{p^s J}`.
pub fn frobenius_power(f: &Polynomial, s: u32) -> Result<Polynomial> {
    let d = f.domain();
    let p = d.characteristic();
    if p == 0 {
        return Err(Error::WrongCharacteristic(
            "Frobenius powering needs positive characteristic".into(),
        ));
    }
    let q = p
        .checked_pow(s)
        .filter(|&q| q <= u32::MAX as u64)
        .ok_or_else(|| Error::WrongCharacteristic(format!("{p}^{s} is too large")))?;
    Ok(Polynomial::from_terms(
        d,
        f.nvars(),
        f.terms().map(|(m, a)| (m.pow(q as u32), d.pow(a, q))),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use proptest::prelude::*;

    fn p(s: &str, n: usize, d: Domain) -> Polynomial {
        parse_poly(s, n, d).unwrap()
    }

    fn plain_mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
        a * b
    }

    #[test]
    fn single_term_has_no_cross_terms() {
        for (d, pr) in [(Domain::PrimeField(3), 3), (Domain::Rationals, 5)] {
            assert!(wp(&p("2*x1^2*x2", 2, d), pr).unwrap().is_zero());
        }
    }

    #[test]
    fn koblitz_cross_terms() {
        let f2 = Domain::PrimeField(2);
        let f = p("x1*x2 + x3*x4 + x5*x6", 6, f2);
        let expected = p("x1*x2*x3*x4 + x1*x2*x5*x6 + x3*x4*x5*x6", 6, f2);
        assert_eq!(wp(&f, 2).unwrap(), expected);
        // char-0 oracle: (f^2 - Σ t^2)/2 reduced mod 2
        let fq = p("x1*x2 + x3*x4 + x5*x6", 6, Domain::Rationals);
        let sq = p("x1^2*x2^2 + x3^2*x4^2 + x5^2*x6^2", 6, Domain::Rationals);
        let oracle = (&fq.pow(2) - &sq).scale(&Domain::Rationals.factorial_unit(2).unwrap());
        assert_eq!(oracle, p("x1*x2*x3*x4 + x1*x2*x5*x6 + x3*x4*x5*x6", 6, Domain::Rationals));
    }

    #[test]
    fn two_variables_in_f3() {
        let f3 = Domain::PrimeField(3);
        assert_eq!(
            wp(&p("x1 + x2", 2, f3), 3).unwrap(),
            p("2*x1^2*x2 + 2*x1*x2^2", 2, f3)
        );
    }

    #[test]
    fn rejects_bad_parameters() {
        let f = p("x1 + x2", 2, Domain::PrimeField(3));
        assert_eq!(wp(&f, 4), Err(Error::InvalidPrime(4)));
        assert!(matches!(wp(&f, 5), Err(Error::WrongCharacteristic(_))));
        let many = p(
            "x1 + x2 + x3 + x1^2 + x2^2 + x3^2 + x1*x2 + x1*x3 + x2*x3",
            3,
            Domain::PrimeField(3),
        );
        assert!(matches!(
            wp_with_cap(&many, 3, 8),
            Err(Error::TooManyTerms { terms: 9, cap: 8 })
        ));
    }

    #[test]
    fn frobenius_examples() {
        let f2 = Domain::PrimeField(2);
        let f = p("x1 + x2", 2, f2);
        assert_eq!(frobenius_power(&f, 0).unwrap(), f);
        assert_eq!(frobenius_power(&f, 1).unwrap(), p("x1^2 + x2^2", 2, f2));
        let g = p("x1*x2 + x3*x4", 4, f2);
        assert_eq!(frobenius_power(&g, 2).unwrap(), p("x1^4*x2^4 + x3^4*x4^4", 4, f2));
        assert_eq!(frobenius_power(&g, 2).unwrap(), g.pow(2).pow(2));
        assert!(frobenius_power(&p("x1", 1, Domain::Rationals), 1).is_err());
    }

    fn arb_int_poly(nvars: usize, max_terms: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
        prop::collection::vec((prop::collection::vec(0u32..3, nvars), -5i64..=5), 0..=max_terms)
    }

    fn build(d: Domain, nvars: usize, raw: &[(Vec<u32>, i64)]) -> Polynomial {
        Polynomial::from_terms(
            d,
            nvars,
            raw.iter().map(|(e, c)| (Monomial::new(e.clone()), d.from_i64(*c))),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn char0_oracle_identity(raw in arb_int_poly(3, 5), pi in 0usize..3) {
            let pr = [2u64, 3, 5][pi];
            let q = Domain::Rationals;
            let f = build(q, 3, &raw);
            let pure = f.terms().fold(Polynomial::zero(q, 3), |acc, (m, c)| {
                &acc + &Polynomial::term(q, m.pow(pr as u32), q.pow(c, pr))
            });
            let fact = q.inv(&q.factorial_unit(pr).unwrap()).unwrap();
            prop_assert_eq!(wp(&f, pr).unwrap().scale(&fact), &f.pow(pr) - &pure);
        }

        #[test]
        fn reduction_mod_p_commutes(raw in arb_int_poly(3, 5), pi in 0usize..3) {
            let pr = [2u64, 3, 5][pi];
            let fp = Domain::PrimeField(pr);
            let over_q = wp(&build(Domain::Rationals, 3, &raw), pr).unwrap();
            // denominators of w_p over Q are divisors of products of l! with l < p
            let reduced = Polynomial::from_terms(fp, 3, over_q.terms().map(|(m, c)| {
                let (r, _) = c.rational_parts();
                (m.clone(), fp.from_ratio(r.numer(), r.denom()).unwrap())
            }));
            prop_assert_eq!(reduced, wp(&build(fp, 3, &raw), pr).unwrap());
        }

        #[test]
        fn splitting_route_matches_enumeration(raw in arb_int_poly(4, 7), pi in 0usize..3) {
            let pr = [2u64, 3, 5][pi];
            for d in [Domain::Rationals, Domain::PrimeField(pr)] {
                let f = build(d, 4, &raw);
                prop_assert_eq!(wp_additive(&f, pr, &plain_mul).unwrap(), wp(&f, pr).unwrap());
            }
        }

        #[test]
        fn disjoint_support_additivity(a in arb_int_poly(2, 4), b in arb_int_poly(2, 4), pi in 0usize..3) {
            let pr = [2u64, 3, 5][pi];
            let d = Domain::PrimeField(pr);
            // the constant monomial would be shared by both
            let mut f = build(d, 2, &a).rename(4, &[0, 1]);
            let mut g = build(d, 2, &b).rename(4, &[2, 3]);
            f.retain(|m| !m.is_one());
            g.retain(|m| !m.is_one());
            let mut rhs = &wp(&f, pr).unwrap() + &wp(&g, pr).unwrap();
            for i in 1..pr {
                let w = d.mul(&d.factorial_unit(i).unwrap(), &d.factorial_unit(pr - i).unwrap());
                rhs = &rhs + &(&f.pow(i) * &g.pow(pr - i)).scale(&w);
            }
            prop_assert_eq!(wp(&(&f + &g), pr).unwrap(), rhs);
        }

        #[test]
        fn frobenius_matches_repeated_multiplication(raw in arb_int_poly(3, 4), s in 0u32..3) {
            let f2 = Domain::PrimeField(2);
            let f = build(f2, 3, &raw);
            let mut expected = Polynomial::one(f2, 3);
            for _ in 0..(1u32 << s) {
                expected = &expected * &f;
            }
            prop_assert_eq!(frobenius_power(&f, s).unwrap(), expected);
        }
    }
}

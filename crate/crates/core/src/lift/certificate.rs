use super::LiftingContext;
use crate::arith::{Coeff, Domain};
use crate::combinat::multinomial_mod_p;
use crate::error::{Error, Result};
use crate::poly::{frobenius_power, wp, Monomial, Polynomial};

/// The coefficient extracted by the certificate method.
///
/// With `f0 = y1 + y2 + y3` for three monomial terms `y_k`, `alpha` is the
/// coefficient of `y1^a y2^a y3^b`, `a = q - p^{r-1}`, `b = 2p^{r-1} - 1`, in
/// `(p-1)!·f0^{q-1}·w_p(f0^{p^{r-1}})` expanded in the symbols `y_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaCertificate {
    pub alpha: Coeff,
    /// `[a, a, b]`.
    pub symbol_exponents: [u64; 3],
    /// The terms of `f0` playing `y1, y2, y3`.
    pub terms: [(Monomial, Coeff); 3],
    /// `m1^a m2^a m3^b`; every exponent is below `q`.
    pub target_monomial: Monomial,
    /// Coefficient of `target_monomial` in the x-expansion,
    /// `alpha · c1^a c2^a c3^b`.
    pub coefficient: Coeff,
}

/// Runs the certificate computation on a three-term `f0`.
///
/// The terms must have pairwise disjoint supports and some assignment of
/// them to `y1, y2, y3` must keep every variable of the target monomial below
/// `q`; otherwise `CertificateInapplicable`.
pub fn certificate_alpha(f0: &Polynomial, ctx: &LiftingContext) -> Result<AlphaCertificate> {
    let d = f0.domain();
    if d.characteristic() != ctx.p() {
        return Err(Error::WrongCharacteristic(format!(
            "f0 has characteristic {}, context needs {}",
            d.characteristic(),
            ctx.p()
        )));
    }
    let terms: Vec<(Monomial, Coeff)> = f0.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    if terms.len() != 3 {
        return Err(Error::CertificateInapplicable(format!(
            "f0 has {} terms, the certificate needs exactly 3",
            terms.len()
        )));
    }
    for (m, _) in &terms {
        if m.degree() < 2 {
            return Err(Error::CertificateInapplicable(format!("term {m} has degree below 2")));
        }
    }
    for i in 0..3 {
        for j in i + 1..3 {
            if !terms[i].0.is_coprime(&terms[j].0) {
                return Err(Error::CertificateInapplicable(format!(
                    "terms {} and {} share a variable",
                    terms[i].0, terms[j].0
                )));
            }
        }
    }
    let (a, b) = symbol_exponents(ctx);
    let q = ctx.q();
    // y1 and y2 are interchangeable, so only the choice of y3 matters
    for third in [2, 1, 0] {
        let order = match third {
            2 => [0, 1, 2],
            1 => [0, 2, 1],
            _ => [1, 2, 0],
        };
        let fits = order.iter().zip([a, a, b]).all(|(&k, e)| {
            terms[k].0.exponents().iter().all(|&x| x as u64 * e < q)
        });
        if fits {
            let chosen = order.map(|k| terms[k].clone());
            return certificate_alpha_for_terms(d, chosen, ctx);
        }
    }
    Err(Error::CertificateInapplicable(format!(
        "no assignment of the terms keeps the target monomial below q = {q}"
    )))
}

fn symbol_exponents(ctx: &LiftingContext) -> (u64, u64) {
    let s = ctx.p().pow(ctx.r() - 1);
    (ctx.q() - s, 2 * s - 1)
}

/// Computes the certificate for an explicit assignment of terms to
/// `y1, y2, y3`. The caller is responsible for the disjointness and degree
/// checks done by [`certificate_alpha`].
pub fn certificate_alpha_for_terms(
    d: Domain,
    terms: [(Monomial, Coeff); 3],
    ctx: &LiftingContext,
) -> Result<AlphaCertificate> {
    let alpha = alpha_in_symbols(ctx)?;
    let (a, b) = symbol_exponents(ctx);
    let exps = [a, a, b];
    let mut target = Monomial::one(terms[0].0.nvars());
    let mut coefficient = alpha.clone();
    for ((m, c), &e) in terms.iter().zip(&exps) {
        target = target.mul(&m.pow(e as u32));
        coefficient = d.mul(&coefficient, &d.pow(c, e));
    }
    debug_assert!(target.exponents().iter().all(|&x| (x as u64) < ctx.q()));
    Ok(AlphaCertificate {
        alpha,
        symbol_exponents: exps,
        terms,
        target_monomial: target,
        coefficient,
    })
}

/// The coefficient `alpha`, computed in `F_p[y1, y2, y3]` with every
/// exponent kept at most `q`.
fn alpha_in_symbols(ctx: &LiftingContext) -> Result<Coeff> {
    let (p, q) = (ctx.p(), ctx.q());
    let d = Domain::PrimeField(p);
    let keep = |m: &Monomial| m.exponents().iter().all(|&x| x as u64 <= q);
    let y = Polynomial::from_terms(d, 3, (0..3).map(|k| (Monomial::var(3, k), d.one())));
    // f0^{q-1} by the multinomial theorem
    let mut power = Polynomial::zero(d, 3);
    for j1 in 0..q {
        for j2 in 0..q - j1 {
            let j3 = q - 1 - j1 - j2;
            let c = multinomial_mod_p(q - 1, &[j1, j2, j3], p)?;
            power.add_term(Monomial::new(vec![j1 as u32, j2 as u32, j3 as u32]), c);
        }
    }
    let w = wp(&frobenius_power(&y, ctx.r() - 1)?, p)?;
    let product = power.mul_filtered(&w, keep);
    let (a, b) = symbol_exponents(ctx);
    let fact = d.factorial_unit(p - 1)?;
    Ok(d.mul(&fact, &product.coeff(&Monomial::new(vec![a as u32, a as u32, b as u32]))))
}

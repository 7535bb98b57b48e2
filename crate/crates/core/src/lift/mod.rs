//! Liftability obstruction for framed quotients in characteristic `p`.
//!
//! For a frame `k[x]/((x^i) + I)` with `f0 ∈ I` and a context `(p, r, e)`,
//! `q = p^r`, the obstruction is non-membership of
//! `w_p(f0^{p^{r-1}})` in `(x^i) + I`, valid when every bound is at most `q`
//! and every monomial `x^l` of `f0` has `Σ ⌊q·l_j / i_j⌋ ≥ e + 1`.

mod certificate;
mod families;
mod koblitz;

pub use certificate::{certificate_alpha, certificate_alpha_for_terms, AlphaCertificate};
pub use families::{
    direct_system, direct_system_new_vars, gen_family, gorenstein_witness, hypersurface_q, quadratic,
    Family,
};
pub use koblitz::{koblitz_generators, koblitz_instance, specialize_at_zero, verify_koblitz, KoblitzReport};

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{is_prime, Domain};
use crate::artin::{FrameSpec, MembershipCertificate};
use crate::divpow::dp_exists;
use crate::error::{Error, Result};
use crate::poly::{frobenius_power, wp_additive, Monomial, Polynomial};

/// The numbers `(p, r, e)`: a local ring with `p·m = 0` and `m^{e+1} = 0`
/// whose residue field has characteristic `p`, and `q = p^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LiftingContext {
    p: u64,
    r: u32,
    e: u64,
}

impl LiftingContext {
    pub fn new(p: u64, r: u32, e: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        if r == 0 {
            return Err(Error::InvalidContext("r must be at least 1".into()));
        }
        let q = p
            .checked_pow(r)
            .filter(|&q| q <= u32::MAX as u64)
            .ok_or_else(|| Error::InvalidContext(format!("{p}^{r} is too large")))?;
        if e == 0 || e > q - 1 {
            return Err(Error::InvalidContext(format!("e = {e} is outside 1..={}", q - 1)));
        }
        Ok(LiftingContext { p, r, e })
    }

    /// The context with the largest admissible `e = q - 1`.
    pub fn with_max_e(p: u64, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        let q = p
            .checked_pow(r)
            .ok_or_else(|| Error::InvalidContext(format!("{p}^{r} is too large")))?;
        Self::new(p, r, q.saturating_sub(1).max(1))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloorTerm {
    pub monomial: Monomial,
    pub floor_sum: u64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloorReport {
    pub holds: bool,
    /// `e + 1`.
    pub threshold: u64,
    pub terms: Vec<FloorTerm>,
}

/// `Σ_j ⌊q·l_j / i_j⌋` for one monomial. Unbounded variables (bound 0)
/// contribute nothing.
pub fn floor_sum(m: &Monomial, bounds: &[u32], q: u64) -> u64 {
    m.exponents()
        .iter()
        .zip(bounds)
        .filter(|(_, &b)| b > 0)
        .map(|(&l, &b)| q * l as u64 / b as u64)
        .sum()
}

/// Checks `Σ_j ⌊q·l_j / i_j⌋ ≥ e + 1` for every monomial `x^l` of `f0`.
pub fn check_floor_hypothesis(f0: &Polynomial, bounds: &[u32], ctx: &LiftingContext) -> FloorReport {
    let threshold = ctx.e() + 1;
    let terms: Vec<FloorTerm> = f0
        .terms()
        .map(|(m, _)| {
            let s = floor_sum(m, bounds, ctx.q());
            FloorTerm {
                monomial: m.clone(),
                floor_sum: s,
                holds: s >= threshold,
            }
        })
        .collect();
    FloorReport {
        holds: terms.iter().all(|t| t.holds),
        threshold,
        terms,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Membership,
    Certificate,
    Auto,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Membership => "membership",
            Method::Certificate => "certificate",
            Method::Auto => "auto",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "membership" => Ok(Method::Membership),
            "certificate" => Ok(Method::Certificate),
            "auto" => Ok(Method::Auto),
            other => Err(Error::Mismatch(format!("unknown method '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Obstructed,
    Unobstructed,
    HypothesisNotMet,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Obstructed => "obstructed",
            Verdict::Unobstructed => "unobstructed",
            Verdict::HypothesisNotMet => "hypothesis-not-met",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObstructionCertificate {
    /// Normal form of `w_p(f0^{p^{r-1}})`.
    Remainder(MembershipCertificate),
    Alpha(AlphaCertificate),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub context: LiftingContext,
    /// Resolved method, never `Auto`.
    pub method: Method,
    pub verdict: Verdict,
    pub floor: FloorReport,
    /// Every bound is at most `q`.
    pub bounds_ok: bool,
    pub certificate: Option<ObstructionCertificate>,
}

/// Decides the obstruction for `f0`, which must be one of the frame's
/// generators (compared after reduction modulo the pure powers).
///
/// `Auto` uses membership when the basis has at most `cap` monomials and the
/// certificate otherwise.
pub fn lift_obstruction(
    f0: &Polynomial,
    spec: &FrameSpec,
    ctx: &LiftingContext,
    method: Method,
    cap: usize,
) -> Result<ObstructionReport> {
    let d = spec.domain();
    if d.characteristic() != ctx.p() {
        return Err(Error::WrongCharacteristic(format!(
            "frame has characteristic {}, context needs {}",
            d.characteristic(),
            ctx.p()
        )));
    }
    if f0.domain() != d || f0.nvars() != spec.nvars() {
        return Err(Error::Mismatch("f0 does not live in the frame's ring".into()));
    }
    let f0 = f0.truncate(spec.bounds());
    if f0.is_zero() || !spec.gens().contains(&f0) {
        return Err(Error::InvalidContext("f0 must be one of the frame's generators".into()));
    }
    let floor = check_floor_hypothesis(&f0, spec.bounds(), ctx);
    let bounds_ok = spec.bounds().iter().all(|&b| b as u64 <= ctx.q());
    let method = match method {
        Method::Auto if spec.basis_size() <= cap as u128 => Method::Membership,
        Method::Auto => Method::Certificate,
        m => m,
    };
    let mut report = ObstructionReport {
        context: *ctx,
        method,
        verdict: Verdict::HypothesisNotMet,
        floor,
        bounds_ok,
        certificate: None,
    };
    if !report.floor.holds || !bounds_ok {
        return Ok(report);
    }
    let (obstructed, cert) = match method {
        Method::Membership => {
            let frame = spec.build(cap)?;
            let target = obstruction_element(&f0, spec, ctx)?;
            let cert = frame.is_member(&target);
            (!cert.verdict, ObstructionCertificate::Remainder(cert))
        }
        _ => {
            check_certificate_frame(&f0, spec, ctx)?;
            let alpha = certificate_alpha(&f0, ctx)?;
            (!alpha.coefficient.is_zero(), ObstructionCertificate::Alpha(alpha))
        }
    };
    report.verdict = if obstructed {
        Verdict::Obstructed
    } else {
        Verdict::Unobstructed
    };
    report.certificate = Some(cert);
    Ok(report)
}

/// `w_p(f0^{p^{r-1}})` reduced modulo the pure powers of the frame.
pub fn obstruction_element(f0: &Polynomial, spec: &FrameSpec, ctx: &LiftingContext) -> Result<Polynomial> {
    let g = frobenius_power(f0, ctx.r() - 1)?.truncate(spec.bounds());
    wp_additive(&g, ctx.p(), &|a, b| spec.mul_truncated(a, b))
}

/// The certificate argument multiplies by `f0^{q-1}` and needs the ideal to
/// be exactly `(x^i) + (f0)` with bound `q` on every variable of `f0`.
fn check_certificate_frame(f0: &Polynomial, spec: &FrameSpec, ctx: &LiftingContext) -> Result<()> {
    if spec.gens().len() != 1 {
        return Err(Error::CertificateInapplicable(format!(
            "frame has {} generators, the certificate needs f0 alone",
            spec.gens().len()
        )));
    }
    for (m, _) in f0.terms() {
        for j in m.support() {
            if spec.bounds()[j] as u64 != ctx.q() {
                return Err(Error::CertificateInapplicable(format!(
                    "x{} has bound {}, the certificate needs q = {}",
                    j + 1,
                    spec.bounds()[j],
                    ctx.q()
                )));
            }
        }
    }
    Ok(())
}

/// Outcome of [`support_sweep`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepSummary {
    pub samples: usize,
    pub seed: u64,
    /// Samples whose frame admits no divided power structure.
    pub without_structure: usize,
}

/// Exploratory only: redraws the nonzero coefficients of `f` at random and
/// counts how often the resulting frame has no divided power structure. The
/// count says nothing about a Zariski-open set; it only shows whether the
/// explicit witness is typical among the sampled ones.
pub fn support_sweep(f: &Polynomial, bounds: &[u32], samples: usize, seed: u64) -> Result<SweepSummary> {
    let d = f.domain();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut without_structure = 0;
    for _ in 0..samples {
        let g = Polynomial::from_terms(
            d,
            f.nvars(),
            f.terms().map(|(m, _)| (m.clone(), random_unit(d, &mut rng))),
        );
        let frame = FrameSpec::new(d, f.nvars(), bounds.to_vec(), vec![g])?.build(crate::artin::DEFAULT_BASIS_CAP)?;
        if !dp_exists(&frame)?.verdict {
            without_structure += 1;
        }
    }
    Ok(SweepSummary {
        samples,
        seed,
        without_structure,
    })
}

fn random_unit(d: Domain, rng: &mut ChaCha8Rng) -> crate::arith::Coeff {
    match d {
        Domain::PrimeField(p) => d.from_i64(rng.gen_range(1..p) as i64),
        _ => d.random(rng, true),
    }
}

//! Divided power structures on framed quotients with bounds at most `p`.
//!
//! A structure is recorded by the values `y_j = γ_p(x_j)`. Everything else
//! follows from `δ = γ_p` through
//! `δ(Σ a_j x_j + h) = Σ a_j^p y_j + w_p(Σ a_j x_j + h)`:
//! every monomial `x_i·m` of degree at least two has
//! `δ(x_i·m) = x_i^p·δ(m) = 0` because `x_i^p` vanishes when `i_j ≤ p`.

mod truncated;

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{Coeff, Domain};
use crate::artin::{MembershipCertificate, QuotientFrame};
use crate::error::{Error, Result};
use crate::poly::{wp_additive, Monomial, Polynomial};

pub use truncated::{dp_truncated_product, TruncatedDpAlgebra};

/// Seed used by sweeps when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_d1f0;

fn frame_prime(frame: &QuotientFrame) -> Result<u64> {
    let p = frame.domain().characteristic();
    if p == 0 {
        return Err(Error::WrongCharacteristic(
            "divided power structures here need a field of characteristic p".into(),
        ));
    }
    for (var, &bound) in frame.bounds().iter().enumerate() {
        if bound as u64 > p {
            return Err(Error::BoundExceedsP { var, bound, p });
        }
    }
    for (index, g) in frame.gens().iter().enumerate() {
        if g.order().is_some_and(|o| o < 2) {
            return Err(Error::NotInSquareOfMaximalIdeal { index });
        }
    }
    Ok(p)
}

/// `w_p(f)` modulo the pure powers of `frame`.
fn wp_mod_bounds(frame: &QuotientFrame, f: &Polynomial, p: u64) -> Result<Polynomial> {
    let spec = frame.spec();
    wp_additive(f, p, &|a, b| spec.mul_truncated(a, b))
}

/// Result of the existence criterion: a structure exists iff `w_p(g)` lies
/// in the defining ideal for every generator `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpExistence {
    pub verdict: bool,
    pub p: u64,
    /// Index of the first generator whose `w_p` is not in the ideal.
    pub failing_generator: Option<usize>,
    pub certificate: Option<MembershipCertificate>,
}

pub fn dp_exists(frame: &QuotientFrame) -> Result<DpExistence> {
    let p = frame_prime(frame)?;
    for (i, g) in frame.gens().iter().enumerate() {
        let cert = frame.is_member(&wp_mod_bounds(frame, g, p)?);
        if !cert.verdict {
            return Ok(DpExistence {
                verdict: false,
                p,
                failing_generator: Some(i),
                certificate: Some(cert),
            });
        }
    }
    Ok(DpExistence {
        verdict: true,
        p,
        failing_generator: None,
        certificate: None,
    })
}

/// A divided power structure on the augmentation ideal of a frame, given by
/// `γ_p` on the frame variables.
#[derive(Clone, Debug)]
pub struct DpStructure {
    frame: Arc<QuotientFrame>,
    p: u64,
    images: Vec<Polynomial>,
}

impl DpStructure {
    /// The unique structure with `γ_p(x_j) = assignments[j]` (all zero when
    /// `None`). Fails with `NoStructure` if the frame admits none.
    pub fn canonical(frame: Arc<QuotientFrame>, assignments: Option<Vec<Polynomial>>) -> Result<Self> {
        let dp = Self::candidate(frame, assignments)?;
        let exists = dp_exists(&dp.frame)?;
        match exists.failing_generator {
            Some(index) => Err(Error::NoStructure { index }),
            None => Ok(dp),
        }
    }

    /// Like [`DpStructure::canonical`] without the existence check, so the
    /// resulting `δ` may fail to be well defined on the quotient.
    pub fn candidate(frame: Arc<QuotientFrame>, assignments: Option<Vec<Polynomial>>) -> Result<Self> {
        let p = frame_prime(&frame)?;
        let (d, n) = (frame.domain(), frame.nvars());
        let images = match assignments {
            None => vec![Polynomial::zero(d, n); n],
            Some(a) => a,
        };
        if images.len() != n {
            return Err(Error::InvalidAssignment {
                var: images.len().min(n),
                msg: format!("expected {n} assignments, got {}", images.len()),
            });
        }
        let mut reduced = Vec::with_capacity(n);
        for (var, y) in images.iter().enumerate() {
            if y.domain() != d || y.nvars() != n {
                return Err(Error::InvalidAssignment {
                    var,
                    msg: "assignment lives in a different ring".into(),
                });
            }
            let y = frame.normal_form(y);
            if !y.constant_term().is_zero() {
                return Err(Error::InvalidAssignment {
                    var,
                    msg: format!("{y} is not in the augmentation ideal"),
                });
            }
            reduced.push(y);
        }
        Ok(DpStructure {
            frame,
            p,
            images: reduced,
        })
    }

    /// No validation at all; for negative controls.
    pub fn unchecked(frame: Arc<QuotientFrame>, p: u64, images: Vec<Polynomial>) -> Self {
        DpStructure { frame, p, images }
    }

    pub fn frame(&self) -> &Arc<QuotientFrame> {
        &self.frame
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `γ_p(x_j)` for every variable.
    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// The structure `δ + τ` where `τ` is the p-linear map sending `x_var`
    /// to `by` and the other variables to zero.
    pub fn shifted(&self, var: usize, by: &Polynomial) -> Result<Self> {
        let mut images = self.images.clone();
        images[var] = &images[var] + by;
        Self::candidate(self.frame.clone(), Some(images))
    }

    /// `δ(f)` modulo the pure powers only, for the representative `f`.
    pub fn delta_raw(&self, f: &Polynomial) -> Result<Polynomial> {
        if !f.constant_term().is_zero() {
            return Err(Error::NotInIdeal);
        }
        let d = self.frame.domain();
        let n = self.frame.nvars();
        let mut out = wp_mod_bounds(&self.frame, f, self.p)?;
        for j in 0..n {
            let a = f.coeff(&Monomial::var(n, j));
            if !a.is_zero() {
                out = &out + &self.images[j].scale(&d.pow(&a, self.p));
            }
        }
        Ok(out)
    }

    /// `δ(f)` in the quotient, in normal form.
    pub fn delta(&self, f: &Polynomial) -> Result<Polynomial> {
        Ok(self.frame.normal_form(&self.delta_raw(f)?))
    }
}

/// Which defining property of `δ` a sweep checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    /// `δ(x)` lies in the augmentation ideal.
    Closure,
    /// `p!·δ(x) = x^p`, which in characteristic `p` says `x^p = 0`.
    PowerVanishes,
    /// `δ(a·x) = a^p·δ(x)`.
    Homogeneity,
    /// `δ(x + y) = δ(x) + δ(y) + Σ x^i y^{p-i} / (i!(p-i)!)`.
    Additivity,
    /// `δ(x + z) = δ(x)` for `z` in the defining ideal.
    WellDefined,
}

impl Axiom {
    pub fn name(&self) -> &'static str {
        match self {
            Axiom::Closure => "closure",
            Axiom::PowerVanishes => "power-vanishes",
            Axiom::Homogeneity => "homogeneity",
            Axiom::Additivity => "additivity",
            Axiom::WellDefined => "well-defined",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub x: Polynomial,
    pub y: Option<Polynomial>,
    pub scalar: Option<Coeff>,
    pub lhs: Polynomial,
    pub rhs: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub passed: bool,
    pub samples: usize,
    pub seed: u64,
    pub violation: Option<AxiomViolation>,
}

struct Sampler<'a> {
    frame: &'a QuotientFrame,
    rng: ChaCha8Rng,
}

impl Sampler<'_> {
    /// Sparse random element of the augmentation ideal of the pure-power
    /// quotient (a representative, not reduced by the extra generators).
    fn augmentation(&mut self) -> Polynomial {
        let f = self.frame;
        let (d, n) = (f.domain(), f.nvars());
        let mut out = Polynomial::zero(d, n);
        if f.basis_size() <= 1 {
            return out;
        }
        let terms = self.rng.gen_range(1..=4);
        for _ in 0..terms {
            // favor linear terms, they carry the assignment
            let m = if self.rng.gen_bool(0.5) {
                Monomial::var(n, self.rng.gen_range(0..n))
            } else {
                f.monomial_at(self.rng.gen_range(1..f.basis_size()))
            };
            if m.is_one() || !crate::poly::below_bounds(&m, f.bounds()) {
                continue;
            }
            out.add_term(m, d.random(&mut self.rng, true));
        }
        out
    }

    /// Random element of the defining ideal: `Σ h_g·g` with sparse `h_g`.
    fn ideal_element(&mut self) -> Polynomial {
        let f = self.frame;
        let (d, n) = (f.domain(), f.nvars());
        let mut out = Polynomial::zero(d, n);
        for g in f.gens() {
            let mut h = Polynomial::constant(d, n, d.random(&mut self.rng, false));
            if self.rng.gen_bool(0.5) {
                h = &h + &self.augmentation();
            }
            out = &out + &f.spec().mul_truncated(&h, g);
        }
        out
    }
}

/// Checks the defining properties of `δ` on every variable, every
/// generator, and `samples` random pairs drawn with `seed`.
pub fn check_delta_axioms(dp: &DpStructure, samples: usize, seed: u64) -> Result<AxiomReport> {
    let frame = dp.frame.as_ref();
    let (d, n, p) = (frame.domain(), frame.nvars(), dp.p);
    let fail = |v: AxiomViolation| AxiomReport {
        passed: false,
        samples,
        seed,
        violation: Some(v),
    };
    let cross_weights: Vec<Coeff> = (1..p)
        .map(|i| Ok(d.mul(&d.factorial_unit(i)?, &d.factorial_unit(p - i)?)))
        .collect::<Result<_>>()?;
    let zero = Polynomial::zero(d, n);

    let closure = |x: &Polynomial| -> Result<Option<AxiomViolation>> {
        let dx = dp.delta(x)?;
        Ok((!dx.constant_term().is_zero()).then(|| AxiomViolation {
            axiom: Axiom::Closure,
            x: x.clone(),
            y: None,
            scalar: None,
            lhs: dx,
            rhs: zero.clone(),
        }))
    };
    let well_defined = |x: &Polynomial, z: &Polynomial| -> Result<Option<AxiomViolation>> {
        let lhs = dp.delta(&(x + z))?;
        let rhs = dp.delta(x)?;
        Ok((lhs != rhs).then(|| AxiomViolation {
            axiom: Axiom::WellDefined,
            x: x.clone(),
            y: Some(z.clone()),
            scalar: None,
            lhs,
            rhs,
        }))
    };

    for j in 0..n {
        if let Some(v) = closure(&Polynomial::var(d, n, j))? {
            return Ok(fail(v));
        }
    }
    for g in frame.gens() {
        if let Some(v) = well_defined(&zero, g)? {
            return Ok(fail(v));
        }
    }

    let mut sampler = Sampler {
        frame,
        rng: ChaCha8Rng::seed_from_u64(seed),
    };
    for _ in 0..samples {
        let x = sampler.augmentation();
        let y = sampler.augmentation();
        let a = d.random(&mut sampler.rng, false);

        if let Some(v) = closure(&x)? {
            return Ok(fail(v));
        }

        let xp = frame.normal_form(&x.pow_filtered(p, |m| crate::poly::below_bounds(m, frame.bounds())));
        if !xp.is_zero() {
            return Ok(fail(AxiomViolation {
                axiom: Axiom::PowerVanishes,
                x: x.clone(),
                y: None,
                scalar: None,
                lhs: xp,
                rhs: zero.clone(),
            }));
        }

        let lhs = dp.delta(&x.scale(&a))?;
        let rhs = dp.delta(&x)?.scale(&d.pow(&a, p));
        if lhs != rhs {
            return Ok(fail(AxiomViolation {
                axiom: Axiom::Homogeneity,
                x: x.clone(),
                y: None,
                scalar: Some(a),
                lhs,
                rhs,
            }));
        }

        let lhs = dp.delta(&(&x + &y))?;
        let mut rhs = &dp.delta(&x)? + &dp.delta(&y)?;
        for i in 1..p {
            let xi = x.pow_filtered(i, |m| crate::poly::below_bounds(m, frame.bounds()));
            let yi = y.pow_filtered(p - i, |m| crate::poly::below_bounds(m, frame.bounds()));
            rhs = &rhs + &frame.mul(&xi, &yi).scale(&cross_weights[i as usize - 1]);
        }
        if lhs != rhs {
            return Ok(fail(AxiomViolation {
                axiom: Axiom::Additivity,
                x,
                y: Some(y),
                scalar: None,
                lhs,
                rhs,
            }));
        }

        if !frame.gens().is_empty() {
            let z = sampler.ideal_element();
            if let Some(v) = well_defined(&x, &z)? {
                return Ok(fail(v));
            }
        }
    }
    Ok(AxiomReport {
        passed: true,
        samples,
        seed,
        violation: None,
    })
}

/// Where a candidate homomorphism fails to commute with `δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomMismatch {
    pub var: usize,
    /// `δ_target(φ(x_var))`.
    pub target_delta: Polynomial,
    /// `φ(δ_source(x_var))`.
    pub mapped_image: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomReport {
    pub verdict: bool,
    pub mismatch: Option<HomMismatch>,
}

/// Checks that `x_j ↦ phi[j]` is a well-defined algebra map between the
/// frames and then whether it commutes with `δ` on the variables, which
/// decides whether it is a homomorphism of divided power algebras.
pub fn check_dp_hom(phi: &[Polynomial], source: &DpStructure, target: &DpStructure) -> Result<HomReport> {
    let (sf, tf) = (source.frame.as_ref(), target.frame.as_ref());
    if phi.len() != sf.nvars() {
        return Err(Error::NotAHomomorphism(format!(
            "{} images for {} variables",
            phi.len(),
            sf.nvars()
        )));
    }
    for (j, img) in phi.iter().enumerate() {
        if img.domain() != tf.domain() || img.nvars() != tf.nvars() {
            return Err(Error::NotAHomomorphism(format!("image of x{} lives in another ring", j + 1)));
        }
        if !tf.normal_form(img).constant_term().is_zero() {
            return Err(Error::NotAHomomorphism(format!(
                "x{} maps outside the augmentation ideal",
                j + 1
            )));
        }
    }
    let apply = |f: &Polynomial| tf.normal_form(&f.substitute(phi, tf.nvars(), |a, b| tf.mul(a, b)));
    for (j, &bound) in sf.bounds().iter().enumerate() {
        let rel = Polynomial::term(
            sf.domain(),
            Monomial::var(sf.nvars(), j).pow(bound),
            sf.domain().one(),
        );
        if !apply(&rel).is_zero() {
            return Err(Error::NotAHomomorphism(format!("x{}^{} does not map to zero", j + 1, bound)));
        }
    }
    for g in sf.gens() {
        if !apply(g).is_zero() {
            return Err(Error::NotAHomomorphism(format!("{g} does not map to zero")));
        }
    }
    for (j, img) in phi.iter().enumerate() {
        let target_delta = target.delta(img)?;
        let mapped_image = apply(&source.images[j]);
        if target_delta != mapped_image {
            return Ok(HomReport {
                verdict: false,
                mismatch: Some(HomMismatch {
                    var: j,
                    target_delta,
                    mapped_image,
                }),
            });
        }
    }
    Ok(HomReport {
        verdict: true,
        mismatch: None,
    })
}

/// The map `x_l ↦ Σ_j y_{l,j}` from `k[x]/(x_l^{i_l})` into the algebra
/// `k[y]/(y^2)` with `i_l − 1` new variables per `x_l`.
#[derive(Clone, Debug)]
pub struct SymEmbedding {
    pub source: Arc<QuotientFrame>,
    pub target: Arc<QuotientFrame>,
    pub images: Vec<Polynomial>,
    /// Rank of the induced linear map on monomial bases.
    pub rank: usize,
    pub injective: bool,
    /// `δ_target(φ(x_l))` for each `l`, all zero for the zero structures.
    pub image_deltas: Vec<Polynomial>,
    pub hom: HomReport,
}

pub fn sym_embed(p: u64, bounds: &[u32]) -> Result<SymEmbedding> {
    let d = Domain::prime_field(p)?;
    if let Some(&b) = bounds.iter().find(|&&b| b < 2 || b as u64 > p) {
        return Err(Error::InvalidBounds(format!("bound {b} outside [2, {p}]")));
    }
    let n = bounds.len();
    let m: usize = bounds.iter().map(|&b| b as usize - 1).sum();
    let source = Arc::new(QuotientFrame::new(d, n, bounds.to_vec(), vec![])?);
    let target = Arc::new(QuotientFrame::new(d, m, vec![2; m], vec![])?);
    let mut images = Vec::with_capacity(n);
    let mut next = 0;
    for &b in bounds {
        let mut img = Polynomial::zero(d, m);
        for _ in 0..b - 1 {
            img = &img + &Polynomial::var(d, m, next);
            next += 1;
        }
        images.push(img);
    }
    let src_dp = DpStructure::candidate(source.clone(), None)?;
    let tgt_dp = DpStructure::candidate(target.clone(), None)?;
    let hom = check_dp_hom(&images, &src_dp, &tgt_dp)?;
    let image_deltas = images
        .iter()
        .map(|img| tgt_dp.delta(img))
        .collect::<Result<Vec<_>>>()?;
    let mut ech = crate::artin::Echelon::new(d);
    for i in 0..source.basis_size() {
        let mono = Polynomial::term(d, source.monomial_at(i), d.one());
        let img = mono.substitute(&images, m, |a, b| target.mul(a, b));
        ech.insert(&target.to_vec(&img));
    }
    let rank = ech.rank();
    Ok(SymEmbedding {
        injective: rank == source.basis_size(),
        source,
        target,
        images,
        rank,
        image_deltas,
        hom,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn frame(p: u64, n: usize, bounds: &[u32], gens: &[&str]) -> Arc<QuotientFrame> {
        let d = Domain::PrimeField(p);
        let gens = gens.iter().map(|g| parse_poly(g, n, d).unwrap()).collect();
        Arc::new(QuotientFrame::new(d, n, bounds.to_vec(), gens).unwrap())
    }

    fn poly(p: u64, n: usize, s: &str) -> Polynomial {
        parse_poly(s, n, Domain::PrimeField(p)).unwrap()
    }

    #[test]
    fn zero_structure_on_a_truncated_line() {
        let dp = DpStructure::canonical(frame(3, 1, &[3], &[]), None).unwrap();
        assert!(dp.delta(&poly(3, 1, "x1")).unwrap().is_zero());
        assert!(check_delta_axioms(&dp, 50, DEFAULT_SEED).unwrap().passed);
    }

    #[test]
    fn assigned_structure_passes() {
        let f = frame(2, 2, &[2, 2], &[]);
        let dp = DpStructure::canonical(f, Some(vec![poly(2, 2, "x2"), poly(2, 2, "0")])).unwrap();
        assert_eq!(dp.delta(&poly(2, 2, "x1")).unwrap(), poly(2, 2, "x2"));
        assert!(dp.delta(&poly(2, 2, "x1*x2")).unwrap().is_zero());
        assert!(check_delta_axioms(&dp, 100, 7).unwrap().passed);
    }

    #[test]
    fn precondition_errors() {
        let f = frame(2, 1, &[3], &[]);
        assert!(matches!(
            DpStructure::canonical(f, None),
            Err(Error::BoundExceedsP { var: 0, bound: 3, p: 2 })
        ));
        let f = frame(2, 2, &[2, 2], &[]);
        assert!(matches!(
            DpStructure::canonical(f, Some(vec![poly(2, 2, "1"), poly(2, 2, "0")])),
            Err(Error::InvalidAssignment { var: 0, .. })
        ));
        let f = frame(2, 2, &[2, 2], &["x1 + x1*x2"]);
        assert!(matches!(dp_exists(&f), Err(Error::NotInSquareOfMaximalIdeal { index: 0 })));
        let dp = DpStructure::canonical(frame(2, 1, &[2], &[]), None).unwrap();
        assert_eq!(dp.delta(&poly(2, 1, "x1 + 1")), Err(Error::NotInIdeal));
    }

    #[test]
    fn koblitz_has_no_structure() {
        let f = frame(2, 6, &[2; 6], &["x1*x2 + x3*x4 + x5*x6"]);
        let report = dp_exists(&f).unwrap();
        assert!(!report.verdict);
        assert!(!report.certificate.unwrap().remainder.is_zero());
        assert!(matches!(DpStructure::canonical(f.clone(), None), Err(Error::NoStructure { index: 0 })));
        // the zero candidate is caught by the sweep
        let cand = DpStructure::candidate(f, None).unwrap();
        let sweep = check_delta_axioms(&cand, 10, DEFAULT_SEED).unwrap();
        assert_eq!(sweep.violation.unwrap().axiom, Axiom::WellDefined);
    }

    #[test]
    fn koblitz_delta_of_generator() {
        let f = frame(2, 6, &[2; 6], &[]);
        let dp = DpStructure::canonical(f, None).unwrap();
        assert_eq!(
            dp.delta(&poly(2, 6, "x1*x2 + x3*x4 + x5*x6")).unwrap(),
            poly(2, 6, "x1*x2*x3*x4 + x1*x2*x5*x6 + x3*x4*x5*x6")
        );
    }

    #[test]
    fn monomial_generator_admits_structure() {
        let f = frame(2, 2, &[2, 2], &["x1*x2"]);
        assert!(dp_exists(&f).unwrap().verdict);
        let dp = DpStructure::canonical(f, None).unwrap();
        assert!(check_delta_axioms(&dp, 100, 1).unwrap().passed);
    }

    #[test]
    fn constant_assignment_is_caught() {
        let f = frame(2, 2, &[2, 2], &[]);
        let bad = DpStructure::unchecked(f, 2, vec![poly(2, 2, "1 + x1"), poly(2, 2, "0")]);
        let report = check_delta_axioms(&bad, 10, 3).unwrap();
        assert_eq!(report.violation.unwrap().axiom, Axiom::Closure);
    }

    #[test]
    fn torsor_shift_passes() {
        let f = frame(2, 2, &[2, 2], &[]);
        let dp = DpStructure::canonical(f, None).unwrap();
        let shifted = dp.shifted(0, &poly(2, 2, "x2")).unwrap();
        assert!(check_delta_axioms(&shifted, 200, 11).unwrap().passed);
    }

    #[test]
    fn homomorphisms() {
        let a = frame(2, 1, &[2], &[]);
        let b = frame(2, 2, &[2, 2], &[]);
        let src = DpStructure::canonical(a.clone(), None).unwrap();
        let tgt = DpStructure::canonical(b, Some(vec![poly(2, 2, "x2"), poly(2, 2, "0")])).unwrap();
        let report = check_dp_hom(&[poly(2, 2, "x1")], &src, &tgt).unwrap();
        assert!(!report.verdict);
        assert_eq!(report.mismatch.unwrap().target_delta, poly(2, 2, "x2"));
        let id = check_dp_hom(&[poly(2, 1, "x1")], &src, &src).unwrap();
        assert!(id.verdict);
        // x1 -> x1 + 1 is not an algebra map into the augmentation ideal
        assert!(matches!(
            check_dp_hom(&[poly(2, 1, "x1 + 1")], &src, &src),
            Err(Error::NotAHomomorphism(_))
        ));
        // x1^2 = 0 in the source but not in k[x]/(x^3)
        let c = frame(3, 1, &[3], &[]);
        let d = frame(3, 1, &[2], &[]);
        let sc = DpStructure::canonical(c, None).unwrap();
        let sd = DpStructure::canonical(d, None).unwrap();
        assert!(matches!(
            check_dp_hom(&[poly(3, 1, "x1")], &sd, &sc),
            Err(Error::NotAHomomorphism(_))
        ));
    }

    #[test]
    fn symmetric_embeddings() {
        let e = sym_embed(3, &[3]).unwrap();
        assert_eq!(e.images, vec![poly(3, 2, "x1 + x2")]);
        assert!(e.injective && e.hom.verdict);
        assert!(e.image_deltas.iter().all(Polynomial::is_zero));

        let e = sym_embed(2, &[2, 2]).unwrap();
        assert_eq!(e.images, vec![poly(2, 2, "x1"), poly(2, 2, "x2")]);
        assert!(e.injective);

        let e = sym_embed(5, &[3, 4]).unwrap();
        assert!(e.injective && e.hom.verdict);
        let s = poly(5, 5, "x1 + x2");
        assert!(e.target.mul(&e.target.mul(&s, &s), &s).is_zero());

        assert!(matches!(sym_embed(3, &[4]), Err(Error::InvalidBounds(_))));
        assert!(matches!(sym_embed(3, &[1]), Err(Error::InvalidBounds(_))));
    }
}

use super::{lift_obstruction, LiftingContext, Method, Verdict};
use crate::arith::Domain;
use crate::artin::DEFAULT_BASIS_CAP;
use crate::divpow::dp_exists;
use crate::error::{Error, Result};
use crate::groebner::{buchberger_in, MonomialOrder, QuotientLength};
use crate::instance::Instance;
use crate::poly::{parse_poly, Polynomial};

const KOBLITZ_GENS: [&str; 7] = [
    "x1^2 + t*x4*x5*x6",
    "x2^2 + t*x3",
    "x3^2",
    "x4^2",
    "x5^2",
    "x6^2",
    "x1*x2 + x3*x4 + x5*x6",
];

const LENGTH_CAP: usize = 1 << 16;

/// The seven generators over `Q(√2)`, with `t = √2`.
pub fn koblitz_generators() -> Vec<Polynomial> {
    let d = Domain::QuadraticField(2);
    KOBLITZ_GENS
        .iter()
        .map(|s| parse_poly(s, 6, d).expect("fixed generators parse"))
        .collect()
}

/// Reduces a polynomial over `Q(√d)` to `F_p` along `√d ↦ 0`:
/// `a + b√d ↦ a mod p`. Fails when a denominator is divisible by `p`.
pub fn specialize_at_zero(f: &Polynomial, p: u64) -> Result<Polynomial> {
    let target = Domain::prime_field(p)?;
    let mut out = Polynomial::zero(target, f.nvars());
    for (m, c) in f.terms() {
        let (a, _) = c.rational_parts();
        out.add_term(m.clone(), target.from_ratio(a.numer(), a.denom())?);
    }
    Ok(out)
}

/// Instance files for the Koblitz ideal: over `Q(√2)` with no bounds, or the
/// `F_2` frame with bounds 2 and the single mixed generator.
pub fn koblitz_instance(char0: bool) -> Instance {
    if char0 {
        let mut inst = Instance::new(Domain::QuadraticField(2), 6);
        inst.gens = koblitz_generators();
        inst.notes.push("Koblitz ideal over Q(sqrt 2), t = sqrt 2".into());
        inst
    } else {
        let d = Domain::PrimeField(2);
        let mut inst = Instance::new(d, 6);
        inst.bounds = Some(vec![2; 6]);
        inst.context = Some(LiftingContext::new(2, 1, 1).expect("valid context"));
        inst.gens.push(parse_poly(KOBLITZ_GENS[6], 6, d).expect("fixed generator parses"));
        inst.notes.push("Koblitz frame over F_2: squares of x1..x6 and x1*x2 + x3*x4 + x5*x6".into());
        inst
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoblitzReport {
    /// A divided power structure exists on the `F_2` frame (expected false).
    pub dp_exists: bool,
    /// The obstruction at `p = 2, r = 1` holds (expected true).
    pub obstructed: bool,
    /// Quotient lengths over `F_2` and `Q(√2)`, in degrevlex and lex.
    pub len_char2: [QuotientLength; 2],
    pub len_char0: [QuotientLength; 2],
    pub passed: bool,
}

impl KoblitzReport {
    pub fn items(&self) -> [(&'static str, bool); 4] {
        let len_ok = |l: &[QuotientLength; 2]| l.iter().all(|&x| x == QuotientLength::Finite(36));
        [
            ("dp", !self.dp_exists),
            ("obstructed", self.obstructed),
            ("len_char2", len_ok(&self.len_char2)),
            ("len_char0", len_ok(&self.len_char0)),
        ]
    }
}

fn lengths(gens: &[Polynomial], d: Domain) -> Result<[QuotientLength; 2]> {
    let mut out = [QuotientLength::Infinite; 2];
    for (slot, order) in out.iter_mut().zip([MonomialOrder::Degrevlex, MonomialOrder::Lex]) {
        *slot = buchberger_in(d, 6, gens, order)?.quotient_length(LENGTH_CAP)?;
    }
    Ok(out)
}

/// Runs the four Koblitz checks: no divided powers on the `F_2` frame, the
/// obstruction at `p = 2`, and length 36 of the seven-generator ideal over
/// `F_2` (`t ↦ 0`) and over `Q(√2)` (`t ↦ √2`).
pub fn verify_koblitz() -> Result<KoblitzReport> {
    let inst = koblitz_instance(false);
    let spec = inst.frame_spec()?;
    let frame = spec.build(DEFAULT_BASIS_CAP)?;
    let dp = dp_exists(&frame)?.verdict;
    let ctx = inst.context.ok_or_else(|| Error::Mismatch("missing context".into()))?;
    let lift = lift_obstruction(&inst.gens[0], &spec, &ctx, Method::Auto, DEFAULT_BASIS_CAP)?;

    let gens0 = koblitz_generators();
    let gens2: Vec<Polynomial> = gens0.iter().map(|g| specialize_at_zero(g, 2)).collect::<Result<_>>()?;
    let len_char2 = lengths(&gens2, Domain::PrimeField(2))?;
    let len_char0 = lengths(&gens0, Domain::QuadraticField(2))?;
    let mut report = KoblitzReport {
        dp_exists: dp,
        obstructed: lift.verdict == Verdict::Obstructed,
        len_char2,
        len_char0,
        passed: false,
    };
    report.passed = report.items().iter().all(|&(_, ok)| ok);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_run_passes() {
        let rep = verify_koblitz().unwrap();
        assert!(!rep.dp_exists);
        assert!(rep.obstructed);
        assert_eq!(rep.len_char2, [QuotientLength::Finite(36); 2]);
        assert_eq!(rep.len_char0, [QuotientLength::Finite(36); 2]);
        assert!(rep.passed);
    }

    #[test]
    fn specialization_drops_t() {
        let g = specialize_at_zero(&koblitz_generators()[0], 2).unwrap();
        assert_eq!(g.to_string(), "x1^2");
        let h = parse_poly("1/2*x1 + t", 1, Domain::QuadraticField(2)).unwrap();
        assert!(specialize_at_zero(&h, 2).is_err());
        assert_eq!(specialize_at_zero(&h, 3).unwrap().to_string(), "2*x1");
    }

    #[test]
    fn instances_round_trip() {
        for char0 in [false, true] {
            let inst = koblitz_instance(char0);
            assert_eq!(inst.to_string().parse::<Instance>().unwrap(), inst);
        }
    }
}

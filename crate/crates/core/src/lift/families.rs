use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use super::{floor_sum, LiftingContext};
use crate::arith::{is_prime, Domain};
use crate::artin::FrameSpec;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::poly::{Monomial, Polynomial};

const MAX_FAMILY_VARS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    HypersurfaceQ,
    Quadratic,
    DirectSystem,
    GorensteinWitness,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::HypersurfaceQ => "hypersurface-q",
            Family::Quadratic => "quadratic",
            Family::DirectSystem => "direct-system",
            Family::GorensteinWitness => "gorenstein-witness",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hypersurface-q" => Ok(Family::HypersurfaceQ),
            "quadratic" => Ok(Family::Quadratic),
            "direct-system" => Ok(Family::DirectSystem),
            "gorenstein-witness" => Ok(Family::GorensteinWitness),
            other => Err(Error::Mismatch(format!("unknown family '{other}'"))),
        }
    }
}

/// Dispatches to the family generators. `index` is `r` for the
/// hypersurface and Gorenstein families, `n` for the direct system, and
/// ignored for the quadratic family.
pub fn gen_family(family: Family, p: u64, index: u32, cap: usize) -> Result<Instance> {
    match family {
        Family::HypersurfaceQ => hypersurface_q(p, index),
        Family::Quadratic => quadratic(p),
        Family::DirectSystem => direct_system(p, index),
        Family::GorensteinWitness => gorenstein_witness(p, index, cap),
    }
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidPrime(p))
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_FAMILY_VARS {
        return Err(Error::InvalidContext(format!(
            "family needs {n} variables, above the limit of {MAX_FAMILY_VARS}"
        )));
    }
    Ok(())
}

/// `x_{offset+1}…x_{offset+len}` as a polynomial in `nvars` variables.
fn block_product(d: Domain, nvars: usize, offset: usize, len: usize) -> Polynomial {
    let mut e = vec![0u32; nvars];
    for x in &mut e[offset..offset + len] {
        *x = 1;
    }
    Polynomial::term(d, Monomial::new(e), d.one())
}

/// Sum of three products of `len` consecutive variables starting at
/// `offset`.
fn three_blocks(d: Domain, nvars: usize, offset: usize, len: usize) -> Polynomial {
    (0..3).fold(Polynomial::zero(d, nvars), |acc, k| {
        &acc + &block_product(d, nvars, offset + k * len, len)
    })
}

/// `x1…xq + x_{q+1}…x_{2q} + x_{2q+1}…x_{3q}` over `F_p` with `q = p^r` and
/// every bound `q`, asserted against `e = q - 1`.
pub fn hypersurface_q(p: u64, r: u32) -> Result<Instance> {
    check_prime(p)?;
    let ctx = LiftingContext::with_max_e(p, r)?;
    let q = ctx.q() as usize;
    let n = 3 * q;
    check_size(n)?;
    let d = Domain::PrimeField(p);
    let mut inst = Instance::new(d, n);
    inst.bounds = Some(vec![q as u32; n]);
    inst.context = Some(ctx);
    inst.gens.push(three_blocks(d, n, 0, q));
    inst.notes.push(format!("hypersurface-q family, p = {p}, r = {r}, q = {q}"));
    inst.notes.push(format!("three products of {q} variables, all bounds {q}"));
    Ok(inst)
}

/// `Σ_{i,j=1}^{p-1} (y_{1,i} y_{2,j} + y_{3,i} y_{4,j} + y_{5,i} y_{6,j})`
/// in `6(p-1)` variables with bounds 2. `y_{l,j}` is `x` number
/// `(l-1)(p-1) + j`.
///
/// The asserted context has `r = 1` and the largest `e ≤ q - 1` allowed by
/// the floor hypothesis, which is `p - 2` for odd `p`.
pub fn quadratic(p: u64) -> Result<Instance> {
    check_prime(p)?;
    let m = (p - 1) as usize;
    let n = 6 * m;
    check_size(n)?;
    let d = Domain::PrimeField(p);
    let var = |l: usize, j: usize| (l - 1) * m + (j - 1);
    let mut g = Polynomial::zero(d, n);
    for i in 1..=m {
        for j in 1..=m {
            for (a, b) in [(1, 2), (3, 4), (5, 6)] {
                let mut e = vec![0u32; n];
                e[var(a, i)] = 1;
                e[var(b, j)] = 1;
                g.add_term(Monomial::new(e), d.one());
            }
        }
    }
    let bounds = vec![2u32; n];
    let min_floor = g
        .terms()
        .map(|(mono, _)| floor_sum(mono, &bounds, p))
        .min()
        .unwrap_or(0);
    let e = min_floor.saturating_sub(1).min(p - 1).max(1);
    let ctx = LiftingContext::new(p, 1, e)?;
    let mut inst = Instance::new(d, n);
    inst.bounds = Some(bounds);
    inst.context = Some(ctx);
    inst.gens.push(g);
    inst.notes.push(format!("quadratic family, p = {p}, {n} variables y(l,j), l = 1..6, j = 1..{m}"));
    inst.notes.push("y(l,j) is x((l-1)(p-1)+j); all bounds 2".to_string());
    Ok(inst)
}

/// Number of variables of stage `n` of the direct system.
fn direct_system_nvars(p: u64, n: u32) -> Result<usize> {
    let mut total: u64 = 0;
    for k in 0..n {
        let block = p
            .checked_pow(k)
            .and_then(|b| b.checked_mul(3))
            .ok_or_else(|| Error::InvalidContext("direct system too large".into()))?;
        total = total
            .checked_add(block)
            .ok_or_else(|| Error::InvalidContext("direct system too large".into()))?;
    }
    let total = usize::try_from(total).map_err(|_| Error::InvalidContext("direct system too large".into()))?;
    check_size(total)?;
    Ok(total)
}

/// The variables adjoined at stage `n`: `3p^{n-1}` of them, at the end.
pub fn direct_system_new_vars(p: u64, n: u32) -> Result<Range<usize>> {
    if n == 0 {
        return Err(Error::DegenerateIndex);
    }
    check_prime(p)?;
    let before = direct_system_nvars(p, n - 1)?;
    Ok(before..direct_system_nvars(p, n)?)
}

/// Stage `n ≥ 1` of the direct system. Stage 1 is `k[y1,y2,y3]/(y_j, y1+y2+y3)`;
/// stage `k+1` adjoins `3p^k` variables `y` with bounds `p^k` and replaces the
/// generator `f` by `f + g(y)`, where `g` is the sum of three products of
/// `p^k` new variables. Stages `n ≥ 2` carry the context
/// `(p, n-1, p^{n-1} - 1)`.
pub fn direct_system(p: u64, n: u32) -> Result<Instance> {
    if n == 0 {
        return Err(Error::DegenerateIndex);
    }
    check_prime(p)?;
    let total = direct_system_nvars(p, n)?;
    let d = Domain::PrimeField(p);
    let mut bounds = Vec::with_capacity(total);
    let mut f = Polynomial::zero(d, total);
    for k in 0..n {
        let block = p.pow(k) as usize;
        let offset = bounds.len();
        bounds.extend(std::iter::repeat(block as u32).take(3 * block));
        f = &f + &three_blocks(d, total, offset, block);
    }
    let mut inst = Instance::new(d, total);
    inst.bounds = Some(bounds);
    inst.gens.push(f);
    if n >= 2 {
        inst.context = Some(LiftingContext::with_max_e(p, n - 1)?);
    }
    let new = direct_system_new_vars(p, n)?;
    inst.notes.push(format!("direct-system family, p = {p}, stage {n}"));
    inst.notes.push(format!(
        "variables x{}..x{} are new at this stage",
        new.start + 1,
        new.end
    ));
    Ok(inst)
}

/// Links the hypersurface-q generator `f0` inside `B0 = F_p[x]/(x_j^q)`:
/// the instance presents `C0 = B0/(0 : f0)` by generators of `(0 : f0)`.
/// Needs the basis `q^{3q}` of `B0` to fit under `cap`.
pub fn gorenstein_witness(p: u64, r: u32, cap: usize) -> Result<Instance> {
    let hyp = hypersurface_q(p, r)?;
    let bounds = hyp.bounds.clone().expect("family sets bounds");
    let b0 = FrameSpec::new(hyp.domain, hyp.nvars, bounds.clone(), vec![])?.build(cap)?;
    let link = b0.link(&hyp.gens[0])?;
    let mut inst = Instance::new(hyp.domain, hyp.nvars);
    inst.bounds = Some(bounds);
    inst.context = hyp.context;
    inst.gens = link.generators;
    inst.notes.push(format!(
        "gorenstein-witness family, p = {p}, r = {r}: annihilator of the hypersurface-q generator"
    ));
    inst.notes.push(format!(
        "length {} linked to length {}; socle dimension {}",
        link.dim_c0, link.dim_a0, link.socle_dim
    ));
    Ok(inst)
}

/// Whether the single generator of a family instance meets the floor
/// hypothesis for the instance's context.
#[cfg(test)]
fn family_floor_holds(inst: &Instance) -> bool {
    use super::check_floor_hypothesis;
    match (&inst.context, &inst.bounds, inst.gens.first()) {
        (Some(ctx), Some(b), Some(g)) => check_floor_hypothesis(&g.truncate(b), b, ctx).holds,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lift::{lift_obstruction, Method, Verdict};
    use crate::poly::parse_poly;

    #[test]
    fn hypersurface_at_q2_is_koblitz() {
        let inst = hypersurface_q(2, 1).unwrap();
        assert_eq!(inst.nvars, 6);
        let koblitz = parse_poly("x1*x2 + x3*x4 + x5*x6", 6, Domain::PrimeField(2)).unwrap();
        assert_eq!(inst.gens, vec![koblitz]);
        assert_eq!(inst.context, Some(LiftingContext::new(2, 1, 1).unwrap()));
        assert!(family_floor_holds(&inst));
    }

    #[test]
    fn hypersurface_at_q4() {
        let inst = hypersurface_q(2, 2).unwrap();
        assert_eq!(inst.nvars, 12);
        assert_eq!(inst.bounds, Some(vec![4; 12]));
        assert_eq!(inst.context.unwrap().e(), 3);
        assert!(family_floor_holds(&inst));
    }

    #[test]
    fn quadratic_shape() {
        let inst = quadratic(3).unwrap();
        assert_eq!(inst.nvars, 12);
        assert_eq!(inst.bounds, Some(vec![2; 12]));
        assert_eq!(inst.gens.len(), 1);
        assert_eq!(inst.gens[0].len(), 12);
        assert!(inst.gens[0].is_homogeneous());
        assert_eq!(inst.gens[0].total_degree(), Some(2));
        assert_eq!(inst.context.unwrap().e(), 1);
        assert!(family_floor_holds(&inst));
        // p = 2 gives the Koblitz generator again
        let two = quadratic(2).unwrap();
        assert_eq!(two.gens, hypersurface_q(2, 1).unwrap().gens);
    }

    #[test]
    fn quadratic_p3_is_obstructed() {
        let inst = quadratic(3).unwrap();
        let spec = inst.frame_spec().unwrap();
        let rep = lift_obstruction(&inst.gens[0], &spec, &inst.context.unwrap(), Method::Membership, 1 << 20).unwrap();
        assert_eq!(rep.verdict, Verdict::Obstructed);
    }

    #[test]
    fn direct_system_stages() {
        assert_eq!(direct_system(2, 0), Err(Error::DegenerateIndex));
        let x1 = direct_system(2, 1).unwrap();
        assert_eq!(x1.nvars, 3);
        assert_eq!(x1.bounds, Some(vec![1; 3]));
        assert!(x1.context.is_none());
        let x2 = direct_system(2, 2).unwrap();
        assert_eq!(x2.nvars, 9);
        assert_eq!(direct_system_new_vars(2, 2).unwrap(), 3..9);
        assert_eq!(x2.context, Some(LiftingContext::new(2, 1, 1).unwrap()));
        assert_eq!(x2.frame_spec().unwrap().basis_size(), 64);
        assert_eq!(direct_system(3, 3).unwrap().nvars, 39);
    }

    #[test]
    fn gorenstein_at_q2() {
        let inst = gorenstein_witness(2, 1, 1 << 20).unwrap();
        let frame = inst.frame_spec().unwrap().build(1 << 20).unwrap();
        assert_eq!(frame.length(), 28);
        assert_eq!(frame.socle_dim(), 1);
    }

    #[test]
    fn family_names_round_trip() {
        for f in [Family::HypersurfaceQ, Family::Quadratic, Family::DirectSystem, Family::GorensteinWitness] {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
    }
}

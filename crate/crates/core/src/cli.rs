//! The `pdlift` command line.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arith::Domain;
use crate::artin::DEFAULT_BASIS_CAP;
use crate::divpow::{check_delta_axioms, dp_exists, DpStructure, DEFAULT_SEED};
use crate::error::Error;
use crate::groebner::{buchberger_in, MonomialOrder, QuotientLength};
use crate::instance::Instance;
use crate::lift::{
    gen_family, lift_obstruction, verify_koblitz, Family, LiftingContext, Method, ObstructionCertificate,
    ObstructionReport, Verdict,
};
use crate::poly::{parse_poly, wp_additive};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

const LENGTH_CAP: usize = 1 << 20;

#[derive(Parser, Debug)]
#[command(name = "pdlift", version, about = "Divided powers and liftability checks for Artinian quotients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute w_p of a polynomial
    Wp(WpArgs),
    /// Decide whether a frame admits a divided power structure
    DpCheck(FileArgs),
    /// Run the liftability obstruction check
    LiftCheck(LiftArgs),
    /// Link a polynomial inside the complete intersection of the bounds
    Link(LinkArgs),
    /// Quotient length by a Groebner basis
    Length(LengthArgs),
    /// Generate a family instance
    Gen(GenArgs),
    /// Run the four Koblitz checks
    VerifyKoblitz(OutputArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Include wall-clock timings in reports
    #[arg(long)]
    timings: bool,
}

#[derive(Args, Debug, Clone)]
struct FileArgs {
    /// Instance file; repeat for a batch
    #[arg(long = "file", required = true)]
    files: Vec<PathBuf>,
    /// Worker threads for a batch of files
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Maximum number of basis monomials of a frame
    #[arg(long, default_value_t = DEFAULT_BASIS_CAP)]
    cap: usize,
    /// Seed for the randomized axiom sweep
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Random samples for the axiom sweep when a structure exists
    #[arg(long, default_value_t = 64)]
    samples: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
struct LiftArgs {
    #[arg(long = "file", required = true)]
    files: Vec<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value_t = DEFAULT_BASIS_CAP)]
    cap: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    /// Override the instance's context; needs --r as well
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    r: Option<u32>,
    /// Defaults to q - 1 when --p and --r are given
    #[arg(long)]
    e: Option<u64>,
    /// The polynomial f0; defaults to the first generator
    #[arg(long)]
    poly: Option<String>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Membership,
    Certificate,
    Auto,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Membership => Method::Membership,
            MethodArg::Certificate => Method::Certificate,
            MethodArg::Auto => Method::Auto,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    Degrevlex,
    Lex,
}

impl From<OrderArg> for MonomialOrder {
    fn from(o: OrderArg) -> MonomialOrder {
        match o {
            OrderArg::Degrevlex => MonomialOrder::Degrevlex,
            OrderArg::Lex => MonomialOrder::Lex,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct WpArgs {
    #[arg(long)]
    poly: String,
    #[arg(long)]
    vars: usize,
    #[arg(long)]
    p: u64,
    /// Coefficient domain; defaults to fp:<p>
    #[arg(long)]
    domain: Option<String>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
struct LinkArgs {
    #[arg(long)]
    file: PathBuf,
    /// The polynomial to link; defaults to the first generator
    #[arg(long)]
    poly: Option<String>,
    #[arg(long, default_value_t = DEFAULT_BASIS_CAP)]
    cap: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
struct LengthArgs {
    #[arg(long = "file", required = true)]
    files: Vec<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Monomial order; defaults to the instance's, then degrevlex
    #[arg(long, value_enum)]
    order: Option<OrderArg>,
    /// Domain override, e.g. to read integer generators over another field
    #[arg(long)]
    domain: Option<String>,
    #[arg(long, default_value_t = LENGTH_CAP)]
    cap: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    HypersurfaceQ,
    Quadratic,
    DirectSystem,
    GorensteinWitness,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::HypersurfaceQ => Family::HypersurfaceQ,
            FamilyArg::Quadratic => Family::Quadratic,
            FamilyArg::DirectSystem => Family::DirectSystem,
            FamilyArg::GorensteinWitness => Family::GorensteinWitness,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    p: u64,
    /// Frobenius exponent for hypersurface-q and gorenstein-witness
    #[arg(long)]
    r: Option<u32>,
    /// Stage of the direct system
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_BASIS_CAP)]
    cap: usize,
    /// Output format; defaults to the instance file text
    #[arg(long, value_enum)]
    format: Option<Format>,
}

/// Failure of one command, with its exit code.
struct Failure {
    code: i32,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceCap { .. } => EXIT_RESOURCE,
            Error::Instance { .. }
            | Error::Parse { .. }
            | Error::VariableOutOfRange { .. }
            | Error::InvalidDomain(_) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        msg: msg.into(),
    }
}

/// One rendered report and the exit code it implies.
struct Outcome {
    json: Value,
    text: String,
    code: i32,
}

/// Parses `args` (including the program name), runs the command and writes
/// the report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Wp(a) => cmd_wp(&a).map(|o| vec![o]).map(|v| (v, a.out.format.unwrap_or(Format::Text))),
        Command::DpCheck(a) => batch(&a.files, a.jobs, |f| dp_check(f, &a)).map(|v| (v, fmt_or_json(&a.out))),
        Command::LiftCheck(a) => batch(&a.files, a.jobs, |f| lift_check(f, &a)).map(|v| (v, fmt_or_json(&a.out))),
        Command::Link(a) => cmd_link(&a).map(|o| (vec![o], fmt_or_json(&a.out))),
        Command::Length(a) => batch(&a.files, a.jobs, |f| length(f, &a)).map(|v| (v, fmt_or_json(&a.out))),
        Command::Gen(a) => cmd_gen(&a).map(|o| (vec![o], a.format.unwrap_or(Format::Text))),
        Command::VerifyKoblitz(a) => cmd_koblitz(&a).map(|o| (vec![o], fmt_or_json(&a))),
    };
    match result {
        Ok((outcomes, format)) => emit(outcomes, format, out, err),
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn fmt_or_json(o: &OutputArgs) -> Format {
    o.format.unwrap_or(Format::Json)
}

fn emit(outcomes: Vec<Result<Outcome, Failure>>, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut code = EXIT_OK;
    let mut values = Vec::new();
    let single = outcomes.len() == 1;
    for o in outcomes {
        match o {
            Ok(o) => {
                if code == EXIT_OK {
                    code = o.code;
                }
                match format {
                    Format::Json => values.push(o.json),
                    Format::Text => {
                        let _ = write!(out, "{}", o.text);
                    }
                }
            }
            Err(f) => {
                if code == EXIT_OK {
                    code = f.code;
                }
                let _ = writeln!(err, "error: {}", f.msg);
                if format == Format::Json {
                    values.push(json!({ "error": f.msg, "exit_code": f.code }));
                }
            }
        }
    }
    if format == Format::Json {
        let v = if single && values.len() == 1 {
            values.pop().unwrap()
        } else {
            Value::Array(values)
        };
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json values serialize"));
    }
    code
}

/// Runs `f` over the files, `jobs` at a time, keeping input order.
fn batch<F>(files: &[PathBuf], jobs: usize, f: F) -> Result<Vec<Result<Outcome, Failure>>, Failure>
where
    F: Fn(&PathBuf) -> Result<Outcome, Failure> + Sync,
{
    if jobs == 0 {
        return Err(usage("--jobs must be at least 1"));
    }
    if jobs == 1 || files.len() == 1 {
        return Ok(files.iter().map(&f).collect());
    }
    let mut slots: Vec<Option<Result<Outcome, Failure>>> = (0..files.len()).map(|_| None).collect();
    let chunk = files.len().div_ceil(jobs);
    std::thread::scope(|s| {
        for (paths, out) in files.chunks(chunk).zip(slots.chunks_mut(chunk)) {
            let f = &f;
            s.spawn(move || {
                for (p, slot) in paths.iter().zip(out.iter_mut()) {
                    *slot = Some(f(p));
                }
            });
        }
    });
    Ok(slots.into_iter().map(|s| s.expect("every slot is filled")).collect())
}

fn timings(enabled: bool, start: Instant) -> Value {
    if enabled {
        json!({ "total_ms": start.elapsed().as_secs_f64() * 1e3 })
    } else {
        Value::Null
    }
}

fn path_str(p: &PathBuf) -> String {
    p.display().to_string()
}

fn cmd_wp(a: &WpArgs) -> Result<Result<Outcome, Failure>, Failure> {
    let start = Instant::now();
    let domain: Domain = match &a.domain {
        Some(s) => s.parse().map_err(|e: Error| usage(e.to_string()))?,
        None => Domain::prime_field(a.p).map_err(|e| usage(e.to_string()))?,
    };
    let f = parse_poly(&a.poly, a.vars, domain).map_err(|e| usage(e.to_string()))?;
    let w = wp_additive(&f, a.p, &|x, y| x * y)?;
    Ok(Ok(Outcome {
        json: json!({
            "command": "wp",
            "domain": domain.to_string(),
            "p": a.p,
            "input": f.to_string(),
            "wp": w.to_string(),
            "timings": timings(a.out.timings, start),
        }),
        text: format!("{w}\n"),
        code: EXIT_OK,
    }))
}

fn dp_check(path: &PathBuf, a: &FileArgs) -> Result<Outcome, Failure> {
    let start = Instant::now();
    let inst = Instance::load(path)?;
    let frame = Arc::new(inst.frame_spec()?.build(a.cap)?);
    let ex = dp_exists(&frame)?;
    let axioms = if ex.verdict && a.samples > 0 {
        let dp = DpStructure::canonical(frame.clone(), None)?;
        let rep = check_delta_axioms(&dp, a.samples, a.seed)?;
        json!({
            "passed": rep.passed,
            "samples": rep.samples,
            "seed": rep.seed,
            "violation": rep.violation.as_ref().map(|v| json!({
                "axiom": v.axiom.name(),
                "x": v.x.to_string(),
                "lhs": v.lhs.to_string(),
                "rhs": v.rhs.to_string(),
            })),
        })
    } else {
        Value::Null
    };
    let certificate = ex.certificate.as_ref().map(|c| {
        json!({
            "kind": "remainder",
            "remainder": c.remainder.to_string(),
            "generator": ex.failing_generator,
        })
    });
    let mut text = format!(
        "{}: divided power structure {}\n",
        path_str(path),
        if ex.verdict { "exists" } else { "does not exist" }
    );
    if let (Some(i), Some(c)) = (ex.failing_generator, &ex.certificate) {
        text += &format!("  generator {} fails; remainder of w_p: {}\n", i + 1, c.remainder);
    }
    if !axioms.is_null() {
        text += &format!("  axiom sweep passed: {}\n", axioms["passed"]);
    }
    Ok(Outcome {
        json: json!({
            "command": "dp-check",
            "instance": path_str(path),
            "p": ex.p,
            "length": frame.length(),
            "verdict": ex.verdict,
            "certificate": certificate,
            "axioms": axioms,
            "timings": timings(a.out.timings, start),
        }),
        text,
        code: EXIT_OK,
    })
}

fn context_for(inst: &Instance, a: &LiftArgs) -> Result<LiftingContext, Failure> {
    match (a.p, a.r) {
        (Some(p), Some(r)) => Ok(match a.e {
            Some(e) => LiftingContext::new(p, r, e)?,
            None => LiftingContext::with_max_e(p, r)?,
        }),
        (None, None) => {
            let ctx = inst
                .context
                .ok_or_else(|| usage("instance has no context line; pass --p and --r"))?;
            Ok(match a.e {
                Some(e) => LiftingContext::new(ctx.p(), ctx.r(), e)?,
                None => ctx,
            })
        }
        _ => Err(usage("--p and --r must be given together")),
    }
}

/// JSON form of an obstruction report.
pub fn obstruction_json(instance: &str, rep: &ObstructionReport, timing: Value) -> Value {
    let certificate = rep.certificate.as_ref().map(|c| match c {
        ObstructionCertificate::Remainder(m) => json!({
            "kind": "remainder",
            "remainder": m.remainder.to_string(),
            "target_monomial": Value::Null,
        }),
        ObstructionCertificate::Alpha(a) => json!({
            "kind": "alpha",
            "alpha": a.alpha.to_string(),
            "coefficient": a.coefficient.to_string(),
            "symbol_exponents": a.symbol_exponents,
            "terms": a.terms.iter().map(|(m, _)| m.to_string()).collect::<Vec<_>>(),
            "target_monomial": a.target_monomial.to_string(),
        }),
    });
    json!({
        "command": "lift-check",
        "instance": instance,
        "context": { "p": rep.context.p(), "r": rep.context.r(), "e": rep.context.e() },
        "method": rep.method.to_string(),
        "verdict": rep.verdict.to_string(),
        "hypothesis": {
            "bounds_at_most_q": rep.bounds_ok,
            "floor_holds": rep.floor.holds,
            "threshold": rep.floor.threshold,
            "terms": rep.floor.terms.iter().map(|t| json!({
                "monomial": t.monomial.to_string(),
                "floor_sum": t.floor_sum,
            })).collect::<Vec<_>>(),
        },
        "certificate": certificate,
        "timings": timing,
    })
}

fn lift_check(path: &PathBuf, a: &LiftArgs) -> Result<Outcome, Failure> {
    let start = Instant::now();
    let inst = Instance::load(path)?;
    let ctx = context_for(&inst, a)?;
    let spec = inst.frame_spec()?;
    let f0 = match &a.poly {
        Some(s) => parse_poly(s, inst.nvars, inst.domain).map_err(|e| usage(e.to_string()))?,
        None => inst
            .gens
            .first()
            .cloned()
            .ok_or_else(|| usage("instance has no generators"))?,
    };
    let rep = lift_obstruction(&f0, &spec, &ctx, a.method.into(), a.cap)?;
    let mut text = format!(
        "{}: {} (method {}, p = {}, r = {}, e = {})\n",
        path_str(path),
        rep.verdict,
        rep.method,
        ctx.p(),
        ctx.r(),
        ctx.e()
    );
    match &rep.certificate {
        Some(ObstructionCertificate::Remainder(m)) => text += &format!("  remainder: {}\n", m.remainder),
        Some(ObstructionCertificate::Alpha(c)) => {
            text += &format!("  alpha = {} at {}\n", c.alpha, c.target_monomial)
        }
        None => {
            for t in rep.floor.terms.iter().filter(|t| !t.holds) {
                text += &format!("  floor sum {} < {} at {}\n", t.floor_sum, rep.floor.threshold, t.monomial);
            }
            if !rep.bounds_ok {
                text += &format!("  some bound exceeds q = {}\n", ctx.q());
            }
        }
    }
    let code = if rep.verdict == Verdict::HypothesisNotMet {
        EXIT_HYPOTHESIS
    } else {
        EXIT_OK
    };
    Ok(Outcome {
        json: obstruction_json(&path_str(path), &rep, timings(a.out.timings, start)),
        text,
        code,
    })
}

fn cmd_link(a: &LinkArgs) -> Result<Result<Outcome, Failure>, Failure> {
    Ok(link(a))
}

fn link(a: &LinkArgs) -> Result<Outcome, Failure> {
    let start = Instant::now();
    let inst = Instance::load(&a.file)?;
    let f = match &a.poly {
        Some(s) => parse_poly(s, inst.nvars, inst.domain).map_err(|e| usage(e.to_string()))?,
        None => inst
            .gens
            .first()
            .cloned()
            .ok_or_else(|| usage("instance has no generators; pass --poly"))?,
    };
    let mut ambient = inst.clone();
    ambient.gens.clear();
    let b0 = ambient.frame_spec()?.build(a.cap)?;
    let l = b0.link(&f)?;
    let gens: Vec<String> = l.generators.iter().map(|g| g.to_string()).collect();
    let text = format!(
        "{}: dim B0 = {}, dim A0 = {}, dim C0 = {}, socle dimension {}{}\n",
        path_str(&a.file),
        l.dim_b0,
        l.dim_a0,
        l.dim_c0,
        l.socle_dim,
        if l.gorenstein { " (Gorenstein)" } else { "" }
    );
    Ok(Outcome {
        json: json!({
            "command": "link",
            "instance": path_str(&a.file),
            "f": f.to_string(),
            "dim_b0": l.dim_b0,
            "dim_annihilator": l.dim_annihilator,
            "dim_a0": l.dim_a0,
            "dim_c0": l.dim_c0,
            "socle_dim": l.socle_dim,
            "gorenstein": l.gorenstein,
            "generators": gens,
            "timings": timings(a.out.timings, start),
        }),
        text,
        code: EXIT_OK,
    })
}

fn length(path: &PathBuf, a: &LengthArgs) -> Result<Outcome, Failure> {
    let start = Instant::now();
    let mut text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_USAGE,
        msg: format!("cannot read {}: {e}", path.display()),
    })?;
    if let Some(d) = &a.domain {
        let d: Domain = d.parse().map_err(|e: Error| usage(e.to_string()))?;
        text = text
            .lines()
            .map(|l| if l.trim_start().starts_with("domain") { format!("domain {d}") } else { l.to_string() })
            .collect::<Vec<_>>()
            .join("\n");
    }
    let inst: Instance = text.parse()?;
    let order: MonomialOrder = match a.order {
        Some(o) => o.into(),
        None => inst.order.unwrap_or(MonomialOrder::Degrevlex),
    };
    let gb = buchberger_in(inst.domain, inst.nvars, &inst.ideal_generators(), order)?;
    let len = gb.quotient_length(a.cap)?;
    let len_json = match len {
        QuotientLength::Finite(n) => json!(n),
        QuotientLength::Infinite => json!("infinite"),
    };
    let len_text = match len {
        QuotientLength::Finite(n) => n.to_string(),
        QuotientLength::Infinite => "infinite".to_string(),
    };
    Ok(Outcome {
        json: json!({
            "command": "length",
            "instance": path_str(path),
            "domain": inst.domain.to_string(),
            "order": order.to_string(),
            "length": len_json,
            "basis": gb.elements().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "timings": timings(a.out.timings, start),
        }),
        text: format!("{len_text}\n"),
        code: EXIT_OK,
    })
}

fn cmd_gen(a: &GenArgs) -> Result<Result<Outcome, Failure>, Failure> {
    let family: Family = a.family.into();
    let index = match family {
        Family::HypersurfaceQ | Family::GorensteinWitness => {
            a.r.ok_or_else(|| usage(format!("--r is required for {family}")))?
        }
        Family::DirectSystem => a.n.ok_or_else(|| usage("--n is required for direct-system"))?,
        Family::Quadratic => 1,
    };
    let inst = gen_family(family, a.p, index, a.cap)?;
    let text = inst.to_string();
    let context = inst
        .context
        .map(|c| json!({ "p": c.p(), "r": c.r(), "e": c.e() }))
        .unwrap_or(Value::Null);
    Ok(Ok(Outcome {
        json: json!({
            "command": "gen",
            "family": family.to_string(),
            "p": a.p,
            "index": index,
            "nvars": inst.nvars,
            "context": context,
            "instance": text,
        }),
        text,
        code: EXIT_OK,
    }))
}

fn cmd_koblitz(a: &OutputArgs) -> Result<Result<Outcome, Failure>, Failure> {
    let start = Instant::now();
    let rep = verify_koblitz()?;
    let len = |l: &QuotientLength| match l {
        QuotientLength::Finite(n) => json!(n),
        QuotientLength::Infinite => json!("infinite"),
    };
    let mut text = String::new();
    for (name, ok) in rep.items() {
        text += &format!("{name}: {}\n", if ok { "ok" } else { "FAILED" });
    }
    text += &format!("passed: {}\n", rep.passed);
    Ok(Ok(Outcome {
        json: json!({
            "command": "verify-koblitz",
            "dp": rep.dp_exists,
            "obstructed": rep.obstructed,
            "len_char2": { "degrevlex": len(&rep.len_char2[0]), "lex": len(&rep.len_char2[1]) },
            "len_char0": { "degrevlex": len(&rep.len_char0[0]), "lex": len(&rep.len_char0[1]) },
            "passed": rep.passed,
            "timings": timings(a.timings, start),
        }),
        text,
        code: if rep.passed { EXIT_OK } else { EXIT_FAILURE },
    }))
}

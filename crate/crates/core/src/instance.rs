//! Plain-text instance files.
//!
//! ```text
//! # free-form note
//! domain fp:2
//! vars 6
//! bounds 2 2 2 2 2 2
//! order degrevlex
//! context 2 1 1
//! gen x1*x2 + x3*x4 + x5*x6
//! ```
//!
//! `domain` and `vars` come first. `bounds`, `order` and `context` (the
//! numbers `p r e`) are optional; a bound of `0` leaves that variable
//! unbounded, which only the Gröbner path accepts.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::arith::Domain;
use crate::artin::FrameSpec;
use crate::error::{Error, Result};
use crate::groebner::MonomialOrder;
use crate::lift::LiftingContext;
use crate::poly::{parse_poly, Monomial, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub domain: Domain,
    pub nvars: usize,
    pub bounds: Option<Vec<u32>>,
    pub order: Option<MonomialOrder>,
    pub context: Option<LiftingContext>,
    pub gens: Vec<Polynomial>,
    pub notes: Vec<String>,
}

impl Instance {
    pub fn new(domain: Domain, nvars: usize) -> Self {
        Instance {
            domain,
            nvars,
            bounds: None,
            order: None,
            context: None,
            gens: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Instance {
            line: 0,
            msg: format!("cannot read {}: {e}", path.display()),
        })?;
        text.parse()
    }

    /// The framed quotient described by this instance. Needs every bound to
    /// be positive.
    pub fn frame_spec(&self) -> Result<FrameSpec> {
        let bounds = self
            .bounds
            .clone()
            .ok_or_else(|| Error::InvalidBounds("instance has no bounds line".into()))?;
        FrameSpec::new(self.domain, self.nvars, bounds, self.gens.clone())
    }

    /// Generators together with the pure powers `x_j^{b_j}` for positive
    /// bounds.
    pub fn ideal_generators(&self) -> Vec<Polynomial> {
        let mut out = Vec::new();
        if let Some(bounds) = &self.bounds {
            for (j, &b) in bounds.iter().enumerate() {
                if b > 0 {
                    out.push(Polynomial::term(
                        self.domain,
                        Monomial::var(self.nvars, j).pow(b),
                        self.domain.one(),
                    ));
                }
            }
        }
        out.extend(self.gens.iter().cloned());
        out
    }
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Instance {
        line,
        msg: msg.into(),
    }
}

impl FromStr for Instance {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut domain: Option<Domain> = None;
        let mut nvars: Option<usize> = None;
        let mut inst: Option<Instance> = None;
        let mut notes = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(note) = line.strip_prefix('#') {
                notes.push(note.trim().to_string());
                continue;
            }
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match key {
                "domain" => {
                    if domain.is_some() {
                        return Err(err(line_no, "duplicate domain line"));
                    }
                    domain = Some(rest.parse().map_err(|e: Error| err(line_no, e.to_string()))?);
                }
                "vars" => {
                    if nvars.is_some() {
                        return Err(err(line_no, "duplicate vars line"));
                    }
                    nvars = Some(rest.parse().map_err(|_| err(line_no, format!("bad variable count '{rest}'")))?);
                }
                _ => {
                    let (Some(d), Some(n)) = (domain, nvars) else {
                        return Err(err(line_no, "domain and vars must come first"));
                    };
                    let inst = inst.get_or_insert_with(|| Instance::new(d, n));
                    match key {
                        "bounds" => {
                            if inst.bounds.is_some() {
                                return Err(err(line_no, "duplicate bounds line"));
                            }
                            let bounds = rest
                                .split_whitespace()
                                .map(|b| b.parse::<u32>())
                                .collect::<std::result::Result<Vec<_>, _>>()
                                .map_err(|_| err(line_no, "bounds must be non-negative integers"))?;
                            if bounds.len() != n {
                                return Err(err(line_no, format!("expected {n} bounds, got {}", bounds.len())));
                            }
                            inst.bounds = Some(bounds);
                        }
                        "order" => {
                            inst.order = Some(rest.parse().map_err(|e: Error| err(line_no, e.to_string()))?);
                        }
                        "context" => {
                            let nums: Vec<u64> = rest
                                .split_whitespace()
                                .map(|x| x.parse::<u64>())
                                .collect::<std::result::Result<_, _>>()
                                .map_err(|_| err(line_no, "context takes three integers p r e"))?;
                            let [p, r, e] = nums[..] else {
                                return Err(err(line_no, "context takes three integers p r e"));
                            };
                            let r = u32::try_from(r).map_err(|_| err(line_no, "r is too large"))?;
                            inst.context =
                                Some(LiftingContext::new(p, r, e).map_err(|e| err(line_no, e.to_string()))?);
                        }
                        "gen" => {
                            let g = parse_poly(rest, n, d).map_err(|e| err(line_no, e.to_string()))?;
                            inst.gens.push(g);
                        }
                        other => return Err(err(line_no, format!("unknown keyword '{other}'"))),
                    }
                }
            }
        }
        let (Some(d), Some(n)) = (domain, nvars) else {
            return Err(err(0, "missing domain or vars line"));
        };
        let mut inst = inst.unwrap_or_else(|| Instance::new(d, n));
        inst.notes = notes;
        Ok(inst)
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for note in &self.notes {
            writeln!(f, "# {note}")?;
        }
        writeln!(f, "domain {}", self.domain)?;
        writeln!(f, "vars {}", self.nvars)?;
        if let Some(bounds) = &self.bounds {
            let b: Vec<String> = bounds.iter().map(u32::to_string).collect();
            writeln!(f, "bounds {}", b.join(" "))?;
        }
        if let Some(order) = self.order {
            writeln!(f, "order {order}")?;
        }
        if let Some(ctx) = &self.context {
            writeln!(f, "context {} {} {}", ctx.p(), ctx.r(), ctx.e())?;
        }
        for g in &self.gens {
            writeln!(f, "gen {g}")?;
        }
        Ok(())
    }
}

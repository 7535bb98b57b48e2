//! Recursive-descent parser for the ASCII polynomial grammar:
//!
//! ```text
//! poly   := term (('+'|'-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := var ('^' nat)?
//! var    := 'x' nat | 't'
//! coeff  := nat | nat '/' nat
//! ```
//!
//! Whitespace is insignificant and a leading sign is accepted. `t` stands
//! for `√d` and is only valid over a quadratic field.

use num_bigint::BigInt;

use super::{Monomial, Polynomial};
use crate::arith::Domain;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
    domain: Domain,
}

pub fn parse_poly(text: &str, nvars: usize, domain: Domain) -> Result<Polynomial> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        nvars,
        domain,
    };
    let p = parser.poly()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(p)
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn small_nat(&mut self) -> Result<u32> {
        let at = self.pos;
        let n = self.nat()?;
        u32::try_from(n).map_err(|_| Error::Parse {
            pos: at,
            msg: "exponent too large".into(),
        })
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.domain, self.nvars);
        let mut negative = self.eat(b'-');
        if !negative {
            self.eat(b'+');
        }
        loop {
            let t = self.term()?;
            acc = if negative { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    negative = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negative = true;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let d = self.domain;
        let mut coeff = d.one();
        let mut exps = vec![0u32; self.nvars];
        let mut first = true;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    if !first {
                        return Err(self.error("a coefficient may only start a term"));
                    }
                    let at = self.pos;
                    let num = self.nat()?;
                    let value = if self.eat(b'/') {
                        let den = self.nat()?;
                        d.from_ratio(&num, &den).map_err(|e| Error::Parse {
                            pos: at,
                            msg: e.to_string(),
                        })?
                    } else {
                        d.from_bigint(&num)
                    };
                    coeff = d.mul(&coeff, &value);
                }
                Some(b't') => {
                    let at = self.pos;
                    self.pos += 1;
                    let root = d.sqrt_generator().ok_or(Error::Parse {
                        pos: at,
                        msg: "'t' is only valid over qsqrt domains".into(),
                    })?;
                    let k = if self.eat(b'^') { self.small_nat()? } else { 1 };
                    coeff = d.mul(&coeff, &d.pow(&root, k as u64));
                }
                Some(b'x') => {
                    self.pos += 1;
                    let at = self.pos;
                    let index = self.nat()?;
                    let index = usize::try_from(index).unwrap_or(usize::MAX);
                    if index == 0 || index > self.nvars {
                        return Err(Error::Parse {
                            pos: at,
                            msg: Error::VariableOutOfRange {
                                index,
                                nvars: self.nvars,
                            }
                            .to_string(),
                        });
                    }
                    let k = if self.eat(b'^') { self.small_nat()? } else { 1 };
                    exps[index - 1] += k;
                }
                _ => return Err(self.error("expected a coefficient, 'x<n>' or 't'")),
            }
            first = false;
            if !self.eat(b'*') {
                break;
            }
        }
        Ok(Polynomial::term(d, Monomial::new(exps), coeff))
    }
}

//! Radial potential descriptors for the positivity screening.
//!
//! The grammar is one term per line,
//!
//! ```text
//! <coeff> r^<power> on [<a>, <b>)
//! ```
//!
//! with decimal (or fractional) numbers, `b = inf` allowed, blank lines and
//! `#` comments skipped. A descriptor denotes `V(r) = sum of c r^p` over the
//! terms whose interval contains `r`; coefficients must be nonnegative so
//! that `V >= 0` holds by construction.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::real::parse_rational;
use crate::{Error, Result};

/// One `c * r^p` contribution supported on `[a, b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialTerm {
    pub coeff: BigRational,
    pub power: BigRational,
    pub lower: BigRational,
    /// `None` means unbounded (`inf`).
    pub upper: Option<BigRational>,
}

/// A nonnegative radial potential as a sum of power terms on intervals.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RadialPotential {
    pub terms: Vec<PotentialTerm>,
}

impl RadialPotential {
    /// The identically-zero potential.
    pub fn zero() -> RadialPotential {
        RadialPotential { terms: Vec::new() }
    }

    /// Scales every coefficient by the nonnegative factor `t`.
    pub fn scaled(&self, t: &BigRational) -> RadialPotential {
        assert!(!t.is_negative(), "potential coefficients must stay >= 0");
        RadialPotential {
            terms: self
                .terms
                .iter()
                .map(|term| PotentialTerm {
                    coeff: &term.coeff * t,
                    ..term.clone()
                })
                .collect(),
        }
    }

    /// `V(r)` as `f64`, for quadrature.
    pub fn eval(&self, r: f64) -> f64 {
        let mut v = 0.0;
        for t in &self.terms {
            let lo = t.lower.to_f64().unwrap_or(f64::INFINITY);
            let hi = t
                .upper
                .as_ref()
                .map(|b| b.to_f64().unwrap_or(f64::INFINITY))
                .unwrap_or(f64::INFINITY);
            if r >= lo && r < hi {
                let c = t.coeff.to_f64().unwrap_or(0.0);
                let p = t.power.to_f64().unwrap_or(0.0);
                v += c * r.powf(p);
            }
        }
        v
    }

    /// Sorted finite breakpoints (term endpoints), plus a flag for an
    /// unbounded tail.
    pub fn breakpoints(&self) -> (Vec<BigRational>, bool) {
        let mut pts: Vec<BigRational> = Vec::new();
        let mut unbounded = false;
        for t in &self.terms {
            if t.coeff.is_zero() {
                continue;
            }
            pts.push(t.lower.clone());
            match &t.upper {
                Some(b) => pts.push(b.clone()),
                None => unbounded = true,
            }
        }
        pts.sort();
        pts.dedup();
        (pts, unbounded)
    }

    /// Terms active somewhere on the open interval `(a, b)`; `b = None`
    /// stands for infinity.
    pub fn active_terms(&self, a: &BigRational, b: Option<&BigRational>) -> Vec<&PotentialTerm> {
        self.terms
            .iter()
            .filter(|t| {
                if t.coeff.is_zero() {
                    return false;
                }
                let starts_before_end = match b {
                    Some(b) => t.lower < *b,
                    None => true,
                };
                let ends_after_start = match &t.upper {
                    Some(u) => u > a,
                    None => true,
                };
                starts_before_end && ends_after_start
            })
            .collect()
    }

    /// Parses the descriptor grammar; errors carry 1-based line/column.
    pub fn parse(text: &str) -> Result<RadialPotential> {
        let mut terms = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = match raw.split_once('#') {
                Some((before, _)) => before,
                None => raw,
            };
            if content.trim().is_empty() {
                continue;
            }
            terms.push(parse_term(content, line)?);
        }
        Ok(RadialPotential { terms })
    }
}

struct Cursor<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text.as_bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(self.err(format!("expected `{token}`")))
        }
    }

    fn number(&mut self, what: &str) -> Result<BigRational> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.text.as_bytes();
        if self.pos < bytes.len() && (bytes[self.pos] == b'+' || bytes[self.pos] == b'-') {
            self.pos += 1;
        }
        while self.pos < bytes.len()
            && (bytes[self.pos].is_ascii_digit()
                || bytes[self.pos] == b'.'
                || bytes[self.pos] == b'/'
                || bytes[self.pos] == b'e'
                || bytes[self.pos] == b'E'
                || ((bytes[self.pos] == b'+' || bytes[self.pos] == b'-')
                    && self.pos > start
                    && (bytes[self.pos - 1] == b'e' || bytes[self.pos - 1] == b'E')))
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err(format!("expected {what}")));
        }
        let token = &self.text[start..self.pos];
        let value = parse_rational(token).map_err(|m| Error::Parse {
            line: self.line,
            column: start + 1,
            message: format!("invalid {what}: {m}"),
        })?;
        Ok(value)
    }

    fn done(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos == self.text.len() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }
}

fn parse_term(text: &str, line: usize) -> Result<PotentialTerm> {
    let mut c = Cursor { line, text, pos: 0 };
    let coeff_start = {
        c.skip_ws();
        c.pos
    };
    let coeff = c.number("coefficient")?;
    if coeff.is_negative() {
        return Err(Error::Parse {
            line,
            column: coeff_start + 1,
            message: "coefficient must be nonnegative (V >= 0)".to_string(),
        });
    }
    c.expect("r")?;
    c.expect("^")?;
    let power = c.number("power")?;
    c.expect("on")?;
    c.expect("[")?;
    let lower_start = {
        c.skip_ws();
        c.pos
    };
    let lower = c.number("lower bound")?;
    if lower.is_negative() {
        return Err(Error::Parse {
            line,
            column: lower_start + 1,
            message: "lower bound must be >= 0".to_string(),
        });
    }
    c.expect(",")?;
    c.skip_ws();
    let upper = if c.text[c.pos..].starts_with("inf") {
        c.pos += 3;
        None
    } else {
        let upper_start = c.pos;
        let b = c.number("upper bound")?;
        if b <= lower {
            return Err(Error::Parse {
                line,
                column: upper_start + 1,
                message: "upper bound must exceed lower bound".to_string(),
            });
        }
        Some(b)
    };
    c.expect(")")?;
    c.done()?;
    Ok(PotentialTerm {
        coeff,
        power,
        lower,
        upper,
    })
}

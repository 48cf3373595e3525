//! Arbitrary-precision real arithmetic.
//!
//! Everything irrational in the crate (d-th roots, Gamma ratios, powers with
//! real exponents, pi) is evaluated through [`RealCtx`] at a configurable
//! decimal precision, 50 digits by default. Exact integer and rational
//! quantities never pass through here.

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::{Error, Result};

/// Default working precision in decimal digits.
pub const DEFAULT_DIGITS: u32 = 50;
/// Largest supported working precision in decimal digits.
pub const MAX_DIGITS: u32 = 4096;
/// Significant digits used whenever a float is printed.
pub const PRINTED_DIGITS: usize = 17;

/// Guard bits on top of the requested precision; final comparisons are made
/// against tolerances far looser than the guard, so intermediate rounding
/// never shows up in results.
const GUARD_BITS: usize = 64;

const RM: RoundingMode = RoundingMode::ToEven;

/// High-precision real number (binary mantissa).
pub type Real = BigFloat;

/// Evaluation context carrying precision and the constants cache.
///
/// Contexts are cheap to create; public crate operations build one per call,
/// which keeps them pure functions without shared mutable state.
pub struct RealCtx {
    digits: u32,
    p: usize,
    cc: Consts,
}

impl RealCtx {
    /// Context with `digits` decimal digits of working precision.
    pub fn new(digits: u32) -> Result<Self> {
        if digits < 1 || digits > MAX_DIGITS {
            return Err(Error::PrecisionOutOfRange(digits));
        }
        // ceil(digits * log2(10)) + guard
        let p = (digits as usize * 3322).div_ceil(1000) + GUARD_BITS;
        let cc = Consts::new().expect("constants cache");
        Ok(RealCtx { digits, p, cc })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn pi(&mut self) -> Real {
        self.cc.pi(self.p, RM)
    }

    pub fn euler_e(&mut self) -> Real {
        self.cc.e(self.p, RM)
    }

    pub fn from_u64(&self, x: u64) -> Real {
        BigFloat::from_u64(x, self.p)
    }

    pub fn from_i64(&self, x: i64) -> Real {
        BigFloat::from_i64(x, self.p)
    }

    pub fn from_f64(&self, x: f64) -> Real {
        BigFloat::from_f64(x, self.p)
    }

    pub fn from_bigint(&mut self, x: &BigInt) -> Real {
        BigFloat::parse(&x.to_string(), Radix::Dec, self.p, RM, &mut self.cc)
    }

    pub fn from_ratio(&mut self, x: &BigRational) -> Real {
        let n = self.from_bigint(x.numer());
        let d = self.from_bigint(x.denom());
        n.div(&d, self.p, RM)
    }

    pub fn add(&self, a: &Real, b: &Real) -> Real {
        a.add(b, self.p, RM)
    }

    pub fn sub(&self, a: &Real, b: &Real) -> Real {
        a.sub(b, self.p, RM)
    }

    pub fn mul(&self, a: &Real, b: &Real) -> Real {
        a.mul(b, self.p, RM)
    }

    pub fn div(&self, a: &Real, b: &Real) -> Real {
        a.div(b, self.p, RM)
    }

    pub fn sqrt(&self, a: &Real) -> Real {
        a.sqrt(self.p, RM)
    }

    pub fn exp(&mut self, a: &Real) -> Real {
        a.exp(self.p, RM, &mut self.cc)
    }

    pub fn ln(&mut self, a: &Real) -> Real {
        a.ln(self.p, RM, &mut self.cc)
    }

    /// `a^n` for a machine-integer exponent.
    pub fn powi(&self, a: &Real, n: u64) -> Real {
        a.powi(n as usize, self.p, RM)
    }

    /// `a^q` for an exact rational exponent; integer exponents stay exact.
    pub fn pow_ratio(&mut self, a: &Real, q: &BigRational) -> Real {
        if q.is_zero() {
            return self.from_u64(1);
        }
        if q.is_integer() {
            let n = q.to_integer();
            if let Ok(n) = u64::try_from(&n) {
                return self.powi(a, n);
            }
            if let Ok(n) = i64::try_from(&n) {
                let pos = self.powi(a, n.unsigned_abs());
                return self.from_u64(1).div(&pos, self.p, RM);
            }
        }
        let e = self.from_ratio(q);
        self.pow(a, &e)
    }

    /// `a^b` for a real exponent, `a > 0`.
    pub fn pow(&mut self, a: &Real, b: &Real) -> Real {
        a.pow(b, self.p, RM, &mut self.cc)
    }

    /// `a^(1/d)`; the `d = 1` case is exact, `d = 2, 3` are correctly
    /// rounded, larger `d` go through `exp(ln(a)/d)` and require `a > 0`.
    pub fn nth_root(&mut self, a: &Real, d: u32) -> Real {
        match d {
            0 => panic!("nth_root: d must be >= 1"),
            1 => a.clone(),
            2 => a.sqrt(self.p, RM),
            3 => a.cbrt(self.p, RM),
            _ => {
                let l = self.ln(a);
                let l = l.div(&self.from_u64(d as u64), self.p, RM);
                self.exp(&l)
            }
        }
    }

    /// Three-way comparison; panics on NaN, which no crate input produces.
    pub fn cmp(&self, a: &Real, b: &Real) -> std::cmp::Ordering {
        let s = a.cmp(b).expect("NaN in real comparison");
        s.cmp(&0)
    }

    pub fn le(&self, a: &Real, b: &Real) -> bool {
        self.cmp(a, b) != std::cmp::Ordering::Greater
    }

    pub fn lt(&self, a: &Real, b: &Real) -> bool {
        self.cmp(a, b) == std::cmp::Ordering::Less
    }

    /// Relative difference `|a - b| / max(1, |b|)` as a `Real`.
    pub fn rel_diff(&self, a: &Real, b: &Real) -> Real {
        let d = self.sub(a, b).abs();
        let scale = b.abs().max(&self.from_u64(1));
        self.div(&d, &scale)
    }

    /// Nearest `f64`, within one ulp.
    pub fn to_f64(&mut self, a: &Real) -> f64 {
        if a.is_zero() {
            return 0.0;
        }
        let (sign, digits, e) = a
            .convert_to_radix(Radix::Dec, RM, &mut self.cc)
            .expect("radix conversion");
        let take = digits.len().min(25);
        let mut s = String::with_capacity(take + 16);
        if sign == Sign::Neg {
            s.push('-');
        }
        s.push_str("0.");
        for d in &digits[..take] {
            s.push((b'0' + d) as char);
        }
        s.push('e');
        s.push_str(&e.to_string());
        s.parse::<f64>().expect("f64 conversion")
    }

    /// Scientific-notation string with exactly `sig` significant digits
    /// (e.g. `2.2391714737574005e0`). Deterministic for equal inputs.
    pub fn format_sig(&mut self, a: &Real, sig: usize) -> String {
        assert!(sig >= 1);
        if a.is_zero() {
            return "0".to_string();
        }
        let (sign, digits, e) = a
            .convert_to_radix(Radix::Dec, RM, &mut self.cc)
            .expect("radix conversion");
        let mut ds: Vec<u8> = digits;
        let mut exp10 = e as i64 - 1; // value = d1.d2... * 10^exp10
        if ds.len() > sig {
            // round half-up at the cut; working precision keeps real ties
            // out of reach
            let round_up = ds[sig] >= 5;
            ds.truncate(sig);
            if round_up {
                let mut i = sig;
                loop {
                    if i == 0 {
                        ds.insert(0, 1);
                        ds.truncate(sig);
                        exp10 += 1;
                        break;
                    }
                    i -= 1;
                    if ds[i] == 9 {
                        ds[i] = 0;
                    } else {
                        ds[i] += 1;
                        break;
                    }
                }
            }
        } else {
            ds.resize(sig, 0);
        }
        let mut s = String::with_capacity(sig + 8);
        if sign == Sign::Neg {
            s.push('-');
        }
        s.push((b'0' + ds[0]) as char);
        if sig > 1 {
            s.push('.');
            for d in &ds[1..] {
                s.push((b'0' + d) as char);
            }
        }
        s.push('e');
        s.push_str(&exp10.to_string());
        s
    }
}

/// Parses a decimal string (optionally `a/b` or scientific notation) into an
/// exact rational. Used for CLI and descriptor inputs so that values like
/// `0.5` stay exact.
pub fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty number".to_string());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_rational(n)?;
        let d = parse_rational(d)?;
        if d.is_zero() {
            return Err("division by zero".to_string());
        }
        return Ok(n / d);
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e
                .parse()
                .map_err(|_| format!("invalid exponent `{e}`"))?;
            (m, exp)
        }
        None => (s, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("invalid number `{s}`"));
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(format!("invalid number `{s}`"));
    }
    let joined = format!("{int_part}{frac_part}");
    let numer: BigInt = joined.parse().map_err(|_| format!("invalid number `{s}`"))?;
    let scale = frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(numer * BigInt::from(sign));
    let net = exp - scale;
    if net >= 0 {
        value *= BigRational::from_integer(ten.pow(net as u32));
    } else {
        value /= BigRational::from_integer(ten.pow((-net) as u32));
    }
    Ok(value)
}

/// True when `|a - b| <= tol * max(1, |b|)`, everything exact rationals.
pub fn ratio_close(a: &BigRational, b: &BigRational, tol: &BigRational) -> bool {
    let diff = (a - b).abs();
    let one = BigRational::from_integer(BigInt::from(1));
    let scale = if b.abs() > one { b.abs() } else { one };
    diff <= tol * scale
}

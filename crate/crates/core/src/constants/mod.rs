//! Sharp constants on the antisymmetric subspace.
//!
//! Hardy constants are exact rationals. Sobolev and CKN constants involve
//! Gamma ratios at integer and half-integer arguments, which reduce to exact
//! rationals times powers of pi; they are evaluated through [`crate::real`]
//! at the requested precision. The positivity screening combines the CKN
//! threshold with adaptive quadrature of the weighted potential norm.

mod potential;
mod quadrature;

pub use potential::{PotentialTerm, RadialPotential};
pub use quadrature::{integrate, QuadResult};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::combinatorics::lambda_min;
use crate::real::{Real, RealCtx};
use crate::{Error, Result};

fn factorial_big(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `ln Gamma(two_a / 2)` for a positive half-integer argument, exactly
/// reduced: integer arguments give `ln (k-1)!`, half-integers use
/// `Gamma(k + 1/2) = (2k)! sqrt(pi) / (4^k k!)`.
fn ln_gamma_half(ctx: &mut RealCtx, two_a: u64) -> Real {
    assert!(two_a >= 1);
    if two_a % 2 == 0 {
        let f = factorial_big(two_a / 2 - 1);
        let f = ctx.from_bigint(&f);
        ctx.ln(&f)
    } else {
        let k = (two_a - 1) / 2;
        let ratio = BigRational::new(
            factorial_big(2 * k),
            BigInt::from(4).pow(k as u32) * factorial_big(k),
        );
        let r = ctx.from_ratio(&ratio);
        let lr = ctx.ln(&r);
        let pi = ctx.pi();
        let lpi = ctx.ln(&pi);
        let two = ctx.from_u64(2);
        let half_lpi = ctx.div(&lpi, &two);
        ctx.add(&lr, &half_lpi)
    }
}

/// Sharp Hardy constant on antisymmetric functions:
/// `H_A(dN) = (dN-2)^2/4 + lambda_d(N)`, an exact rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HardyConstant {
    pub d: u32,
    pub n: u64,
    /// Classical part `(dN-2)^2 / 4`.
    pub classical_part: BigRational,
    /// Antisymmetric part `lambda_d(N)`.
    pub antisymmetric_part: BigInt,
    /// `classical_part + antisymmetric_part`.
    pub total: BigRational,
}

pub fn hardy_constant(d: u32, n: u64) -> HardyConstant {
    assert!(d >= 1 && n >= 2, "hardy_constant: requires d >= 1, N >= 2");
    let dn = BigInt::from(d as u64 * n);
    let classical_part = BigRational::new((&dn - BigInt::from(2)).pow(2), BigInt::from(4));
    let antisymmetric_part = lambda_min(d, n);
    let total = &classical_part + BigRational::from_integer(antisymmetric_part.clone());
    HardyConstant {
        d,
        n,
        classical_part,
        antisymmetric_part,
        total,
    }
}

/// Surface measure of the unit sphere in `n`-space,
/// `|S^{n-1}| = 2 pi^{n/2} / Gamma(n/2)`, reduced to rational times
/// `pi^{floor(n/2)}`.
pub fn sphere_surface_area(n: u64, digits: u32) -> Result<Real> {
    assert!(n >= 1, "sphere_surface_area: requires n >= 1");
    let mut ctx = RealCtx::new(digits)?;
    let k = n / 2;
    let coeff = if n % 2 == 0 {
        // 2 pi^k / (k-1)!
        BigRational::new(BigInt::from(2), factorial_big(k - 1))
    } else {
        // 2^{2k+1} k! pi^k / (2k)!
        BigRational::new(
            BigInt::from(2).pow(2 * k as u32 + 1) * factorial_big(k),
            factorial_big(2 * k),
        )
    };
    let coeff = ctx.from_ratio(&coeff);
    let pi = ctx.pi();
    let pik = ctx.powi(&pi, k);
    Ok(ctx.mul(&coeff, &pik))
}

fn sobolev_classical_with_ctx(ctx: &mut RealCtx, n: u64) -> Real {
    // S(n) = pi n (n-2) (Gamma(n/2) / Gamma(n))^{2/n}
    let lg_half = ln_gamma_half(ctx, n);
    let lg_full = ln_gamma_half(ctx, 2 * n);
    let diff = ctx.sub(&lg_half, &lg_full);
    let two_over_n = ctx.from_ratio(&BigRational::new(BigInt::from(2), BigInt::from(n)));
    let scaled = ctx.mul(&diff, &two_over_n);
    let ratio_pow = ctx.exp(&scaled);
    let pi = ctx.pi();
    let lead = ctx.from_u64(n * (n - 2));
    let lead = ctx.mul(&pi, &lead);
    ctx.mul(&lead, &ratio_pow)
}

/// Classical sharp Sobolev constant `S(n)` via log-Gamma evaluation.
pub fn sobolev_classical(n: u64, digits: u32) -> Result<Real> {
    assert!(n >= 3, "sobolev_classical: requires n >= 3");
    let mut ctx = RealCtx::new(digits)?;
    Ok(sobolev_classical_with_ctx(&mut ctx, n))
}

/// The equivalent printed form `S(n) = n(n-2)/4 |S^n|^{2/n}`, where `|S^n|`
/// is the measure of the n-sphere sitting in (n+1)-space. Kept as an
/// independent cross-check of [`sobolev_classical`].
pub fn sobolev_classical_sphere_form(n: u64, digits: u32) -> Result<Real> {
    assert!(n >= 3, "sobolev_classical_sphere_form: requires n >= 3");
    let mut ctx = RealCtx::new(digits)?;
    let area = sphere_surface_area(n + 1, digits)?;
    let ln_area = ctx.ln(&area);
    let two_over_n = ctx.from_ratio(&BigRational::new(BigInt::from(2), BigInt::from(n)));
    let scaled = ctx.mul(&ln_area, &two_over_n);
    let area_pow = ctx.exp(&scaled);
    let lead = ctx.from_ratio(&BigRational::new(
        BigInt::from(n * (n - 2)),
        BigInt::from(4),
    ));
    Ok(ctx.mul(&lead, &area_pow))
}

/// Sharp Sobolev constant on antisymmetric functions,
/// `S_A(dN) = (N!)^{2/dN} S(dN)`.
#[derive(Debug, Clone)]
pub struct SobolevConstant {
    /// Ambient dimension `n = dN`.
    pub n: u64,
    /// Classical `S(n)`.
    pub classical: Real,
    /// `(N!)^{2/dN}`, greater than 1 for `N >= 2`.
    pub factorial_factor: Real,
    /// `factorial_factor * classical`.
    pub antisymmetric: Real,
}

pub fn sobolev_antisym(d: u32, n: u64, digits: u32) -> Result<SobolevConstant> {
    if d as u64 * n < 3 {
        return Err(Error::InvalidArgument(format!(
            "sobolev_antisym requires dN >= 3, got d={d}, N={n}"
        )));
    }
    assert!(n >= 2, "sobolev_antisym: requires N >= 2");
    let dn = d as u64 * n;
    let mut ctx = RealCtx::new(digits)?;
    let classical = sobolev_classical_with_ctx(&mut ctx, dn);
    let nf = factorial_big(n);
    let nf = ctx.from_bigint(&nf);
    let ln_nf = ctx.ln(&nf);
    let two_over_dn = ctx.from_ratio(&BigRational::new(BigInt::from(2), BigInt::from(dn)));
    let scaled = ctx.mul(&ln_nf, &two_over_dn);
    let factorial_factor = ctx.exp(&scaled);
    let antisymmetric = ctx.mul(&factorial_factor, &classical);
    Ok(SobolevConstant {
        n: dn,
        classical,
        factorial_factor,
        antisymmetric,
    })
}

/// The single-expression printed form
/// `S_A(dN) = pi dN (dN-2) (Gamma(dN/2) N! / Gamma(dN))^{2/dN}`,
/// kept as an independent cross-check of [`sobolev_antisym`].
pub fn sobolev_antisym_direct(d: u32, n: u64, digits: u32) -> Result<Real> {
    if d as u64 * n < 3 {
        return Err(Error::InvalidArgument(format!(
            "sobolev_antisym requires dN >= 3, got d={d}, N={n}"
        )));
    }
    let dn = d as u64 * n;
    let mut ctx = RealCtx::new(digits)?;
    let lg_half = ln_gamma_half(&mut ctx, dn);
    let lg_full = ln_gamma_half(&mut ctx, 2 * dn);
    let nf = factorial_big(n);
    let nf = ctx.from_bigint(&nf);
    let ln_nf = ctx.ln(&nf);
    let sum = ctx.add(&lg_half, &ln_nf);
    let diff = ctx.sub(&sum, &lg_full);
    let two_over_dn = ctx.from_ratio(&BigRational::new(BigInt::from(2), BigInt::from(dn)));
    let scaled = ctx.mul(&diff, &two_over_dn);
    let pow = ctx.exp(&scaled);
    let pi = ctx.pi();
    let lead = ctx.from_u64(dn * (dn - 2));
    let lead = ctx.mul(&pi, &lead);
    Ok(ctx.mul(&lead, &pow))
}

/// CKN interpolation parameters for `(d, N, nu)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CknParameters {
    pub d: u32,
    pub n: u64,
    pub nu: BigRational,
    /// `p = 2dN / (dN - 2 nu)`.
    pub p: BigRational,
    /// `gamma = 2dN (nu - 1) / (dN - 2 nu)`, always in `[-2, 0]`.
    pub gamma: BigRational,
}

pub fn ckn_parameters(d: u32, n: u64, nu: &BigRational) -> Result<CknParameters> {
    let dn = d as u64 * n;
    if dn < 3 {
        return Err(Error::InvalidArgument(format!(
            "ckn_parameters requires dN >= 3, got d={d}, N={n}"
        )));
    }
    if nu.is_negative() || *nu > BigRational::one() {
        return Err(Error::InvalidArgument(format!(
            "nu must lie in [0, 1], got {nu}"
        )));
    }
    let dn = BigRational::from_integer(BigInt::from(dn));
    let two = BigRational::from_integer(BigInt::from(2));
    let denom = &dn - nu * &two;
    let p = &two * &dn / &denom;
    let gamma = &two * &dn * (nu - BigRational::one()) / &denom;
    Ok(CknParameters {
        d,
        n,
        nu: nu.clone(),
        p,
        gamma,
    })
}

/// The pair of CKN constants at `(d, N, nu)`.
#[derive(Debug, Clone)]
pub struct CknConstant {
    /// `K~ = S_A^{-nu}(dN)`, the interpolation constant.
    pub upper: Real,
    /// `K = S_A^{nu}(dN) H_A^{1-nu}(dN)`, the inequality constant.
    pub lower_form: Real,
}

pub fn ckn_constant(d: u32, n: u64, nu: &BigRational, digits: u32) -> Result<CknConstant> {
    if nu.is_negative() || *nu > BigRational::one() {
        return Err(Error::InvalidArgument(format!(
            "nu must lie in [0, 1], got {nu}"
        )));
    }
    let sob = sobolev_antisym(d, n, digits)?;
    let hardy = hardy_constant(d, n);
    let mut ctx = RealCtx::new(digits)?;
    let ln_sa = ctx.ln(&sob.antisymmetric);
    let ha = ctx.from_ratio(&hardy.total);
    let ln_ha = ctx.ln(&ha);
    let nu_r = ctx.from_ratio(nu);
    let one_minus = BigRational::one() - nu;
    let one_minus_r = ctx.from_ratio(&one_minus);
    let minus_one = ctx.from_i64(-1);
    let neg_nu = ctx.mul(&nu_r, &minus_one);
    let upper_exp = ctx.mul(&neg_nu, &ln_sa);
    let upper = ctx.exp(&upper_exp);
    let a = ctx.mul(&nu_r, &ln_sa);
    let b = ctx.mul(&one_minus_r, &ln_ha);
    let lower_exp = ctx.add(&a, &b);
    let lower_form = ctx.exp(&lower_exp);
    Ok(CknConstant { upper, lower_form })
}

/// Leading asymptotic term of `H_A(dN)`:
/// `d^2/(d+1)^2 (d!)^{2/d} N^{2+2/d}`.
pub fn hardy_leading_term(d: u32, n: u64, digits: u32) -> Result<Real> {
    let mut ctx = RealCtx::new(digits)?;
    let radicand =
        BigRational::from_integer(factorial_big(d as u64) * BigInt::from(n).pow(d + 1));
    let radicand = ctx.from_ratio(&radicand);
    let root = ctx.nth_root(&radicand, d);
    let root2 = ctx.mul(&root, &root);
    let coeff = BigRational::new(
        BigInt::from(d as u64 * d as u64),
        BigInt::from((d as u64 + 1) * (d as u64 + 1)),
    );
    let coeff = ctx.from_ratio(&coeff);
    Ok(ctx.mul(&coeff, &root2))
}

/// Leading asymptotic term of `S_A(dN)`:
/// `(pi e^{1-2/d} / 2) d N^{1+2/d}`.
pub fn sobolev_antisym_leading_term(d: u32, n: u64, digits: u32) -> Result<Real> {
    let mut ctx = RealCtx::new(digits)?;
    let expo = ctx.from_ratio(&BigRational::new(
        BigInt::from(d as i64 - 2),
        BigInt::from(d),
    ));
    let e_pow = ctx.exp(&expo);
    let pi = ctx.pi();
    let lead = ctx.mul(&pi, &e_pow);
    let half_d = ctx.from_ratio(&BigRational::new(BigInt::from(d), BigInt::from(2)));
    let lead = ctx.mul(&lead, &half_d);
    // N^{1+2/d} = (N^{d+2})^{1/d}
    let radicand = ctx.from_bigint(&BigInt::from(n).pow(d + 2));
    let npow = ctx.nth_root(&radicand, d);
    Ok(ctx.mul(&lead, &npow))
}

/// Leading asymptotic term of `K_d(N, nu)`:
/// `(pi e^{1-2/d}/2)^nu d^{2-nu} (d+1)^{2nu-2} (d!)^{(2-2nu)/d} N^{2+2/d-nu}`.
pub fn ckn_leading_term(d: u32, n: u64, nu: &BigRational, digits: u32) -> Result<Real> {
    let mut ctx = RealCtx::new(digits)?;
    let two = BigRational::from_integer(BigInt::from(2));
    let dr = BigRational::from_integer(BigInt::from(d));
    // ln lead = nu (ln pi + 1 - 2/d - ln 2) + (2 - nu) ln d
    //           + (2 nu - 2) ln(d+1) + (2 - 2 nu)/d ln d! + (2 + 2/d - nu) ln N
    let pi = ctx.pi();
    let ln_pi = ctx.ln(&pi);
    let two_r = ctx.from_u64(2);
    let ln_2 = ctx.ln(&two_r);
    let one_minus_2d = ctx.from_ratio(&(BigRational::one() - &two / &dr));
    let base = ctx.add(&ln_pi, &one_minus_2d);
    let base = ctx.sub(&base, &ln_2);
    let nu_r = ctx.from_ratio(nu);
    let mut acc = ctx.mul(&nu_r, &base);

    let d_real = ctx.from_u64(d as u64);
    let ln_d = ctx.ln(&d_real);
    let c = ctx.from_ratio(&(&two - nu));
    let t = ctx.mul(&c, &ln_d);
    acc = ctx.add(&acc, &t);

    let d1_real = ctx.from_u64(d as u64 + 1);
    let ln_d1 = ctx.ln(&d1_real);
    let c = ctx.from_ratio(&(nu * &two - &two));
    let t = ctx.mul(&c, &ln_d1);
    acc = ctx.add(&acc, &t);

    let fact = ctx.from_bigint(&factorial_big(d as u64));
    let ln_fact = ctx.ln(&fact);
    let c = ctx.from_ratio(&((&two - nu * &two) / &dr));
    let t = ctx.mul(&c, &ln_fact);
    acc = ctx.add(&acc, &t);

    let n_real = ctx.from_u64(n);
    let ln_n = ctx.ln(&n_real);
    let c = ctx.from_ratio(&(&two + &two / &dr - nu));
    let t = ctx.mul(&c, &ln_n);
    acc = ctx.add(&acc, &t);

    Ok(ctx.exp(&acc))
}

/// Outcome of the positivity screening; the criterion is sufficient, not
/// necessary, so failures are `Inconclusive` rather than negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Positive,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Positive => write!(f, "positive"),
            Verdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// Result of screening `-Delta - V` on antisymmetric functions.
#[derive(Debug, Clone)]
pub struct PositivityVerdict {
    pub params: CknParameters,
    /// CKN threshold `K_d(N, nu)`.
    pub threshold: Real,
    /// Weighted potential norm
    /// `(|S^{dN-1}| int V^{dN/2nu} r^{(1-nu)dN/nu + dN - 1} dr)^{2nu/dN}`.
    pub potential_norm: Real,
    /// Error estimate on `potential_norm` (quadrature + truncation,
    /// propagated through the outer power by first-order sensitivity).
    pub quadrature_error: Real,
    /// `Positive` iff `potential_norm + quadrature_error <= threshold`.
    pub verdict: Verdict,
    /// `threshold - potential_norm` (signed).
    pub margin: Real,
}

/// Screens `-Delta - V` for positivity via the CKN criterion.
///
/// Requires `dN >= 3` and `0 < nu <= 1`; `nu = 0` is rejected because the
/// integrand exponent `dN/(2 nu)` is undefined there. Non-integrable
/// weighted potentials are reported as errors rather than infinite norms.
pub fn positivity_check(
    d: u32,
    n: u64,
    nu: &BigRational,
    potential: &RadialPotential,
    digits: u32,
) -> Result<PositivityVerdict> {
    let dn = d as u64 * n;
    if dn < 3 {
        return Err(Error::InvalidArgument(format!(
            "positivity_check requires dN >= 3, got d={d}, N={n}"
        )));
    }
    if nu.is_zero() {
        return Err(Error::InvalidArgument(
            "nu = 0 is rejected: the integrand exponent dN/(2 nu) is undefined".to_string(),
        ));
    }
    if nu.is_negative() || *nu > BigRational::one() {
        return Err(Error::InvalidArgument(format!(
            "nu must lie in (0, 1], got {nu}"
        )));
    }
    for t in &potential.terms {
        if t.coeff.is_negative() {
            return Err(Error::InvalidArgument(
                "potential coefficients must be nonnegative".to_string(),
            ));
        }
    }
    let params = ckn_parameters(d, n, nu)?;
    let threshold = ckn_constant(d, n, nu, digits)?.lower_form;
    let mut ctx = RealCtx::new(digits)?;

    // exponents: V^q r^w with q = dN/(2 nu), w = (1-nu)/nu dN + dN - 1
    let dn_q = BigRational::from_integer(BigInt::from(dn));
    let q = &dn_q / (nu * BigRational::from_integer(BigInt::from(2)));
    let w = (BigRational::one() - nu) / nu * &dn_q + &dn_q - BigRational::one();

    // integrability at both endpoints, term by term (coefficients are
    // nonnegative, so any single non-integrable term decides)
    let minus_one = -BigRational::one();
    for t in &potential.terms {
        if t.coeff.is_zero() {
            continue;
        }
        let s = &t.power * &q + &w;
        if t.lower.is_zero() && s <= minus_one {
            return Err(Error::NonIntegrable(format!(
                "term `{} r^{}` gives weighted exponent {} <= -1 at r -> 0",
                t.coeff, t.power, s
            )));
        }
        if t.upper.is_none() && s >= minus_one {
            return Err(Error::NonIntegrable(format!(
                "term `{} r^{}` gives weighted exponent {} >= -1 at r -> inf",
                t.coeff, t.power, s
            )));
        }
    }

    let qf = q.to_f64().expect("q fits in f64");
    let wf = w.to_f64().expect("w fits in f64");
    let f = |r: f64| -> f64 {
        let v = potential.eval(r);
        if v <= 0.0 {
            0.0
        } else {
            v.powf(qf) * r.powf(wf)
        }
    };

    const ABS_TOL: f64 = 1e-10;
    const REL_TOL: f64 = 1e-10;
    let (pts, unbounded) = potential.breakpoints();
    let mut total = 0.0f64;
    let mut err = 0.0f64;
    for pair in pts.windows(2) {
        let a = &pair[0];
        let b = &pair[1];
        if potential.active_terms(a, Some(b)).is_empty() {
            continue;
        }
        let af = a.to_f64().expect("bound fits in f64");
        let bf = b.to_f64().expect("bound fits in f64");
        let r = integrate(&f, af, bf, ABS_TOL, REL_TOL);
        total += r.value;
        err += r.error;
    }
    if unbounded {
        let r0 = pts.last().cloned().unwrap_or_else(BigRational::zero);
        let active = potential.active_terms(&r0, None);
        // splitting at max(r0, 1) keeps the exponential substitution away
        // from r = 0
        let r_split = if r0 < BigRational::one() {
            let one = BigRational::one();
            if !potential.active_terms(&r0, Some(&one)).is_empty() {
                let r = integrate(&f, r0.to_f64().unwrap(), 1.0, ABS_TOL, REL_TOL);
                total += r.value;
                err += r.error;
            }
            1.0
        } else {
            r0.to_f64().expect("bound fits in f64")
        };
        // decay exponent of the integrand at infinity
        let s_max = active
            .iter()
            .map(|t| (&t.power * &q + &w).to_f64().unwrap())
            .fold(f64::NEG_INFINITY, f64::max);
        debug_assert!(s_max < -1.0);
        let decay = -(s_max + 1.0);
        // r = r_split e^t: integrand decays like e^{-decay t}
        let t_max = (14.0 * std::f64::consts::LN_10 / decay).min(1e6);
        let g = |t: f64| -> f64 {
            let r = r_split * t.exp();
            f(r) * r
        };
        let r = integrate(&g, 0.0, t_max, ABS_TOL, REL_TOL);
        total += r.value;
        // truncation remainder bound: |g(t_max)| / decay, doubled for the
        // pre-asymptotic regime
        let trunc = 2.0 * g(t_max).abs() / decay;
        err += r.error + trunc;
    }

    // norm = (area * I)^{2 nu / dN}, error propagated to first order
    let theta = nu * BigRational::from_integer(BigInt::from(2)) / &dn_q;
    let (potential_norm, quadrature_error) = if total <= 0.0 {
        (ctx.from_u64(0), ctx.from_f64(err))
    } else {
        let area = sphere_surface_area(dn, digits)?;
        let ln_area = ctx.ln(&area);
        let i_real = ctx.from_f64(total);
        let ln_i = ctx.ln(&i_real);
        let s = ctx.add(&ln_area, &ln_i);
        let theta_r = ctx.from_ratio(&theta);
        let scaled = ctx.mul(&s, &theta_r);
        let norm = ctx.exp(&scaled);
        let rel = ctx.from_f64(err / total);
        let e = ctx.mul(&norm, &theta_r);
        let e = ctx.mul(&e, &rel);
        (norm, e.abs())
    };
    let margin = ctx.sub(&threshold, &potential_norm);
    let reach = ctx.add(&potential_norm, &quadrature_error);
    let verdict = if ctx.le(&reach, &threshold) {
        Verdict::Positive
    } else {
        Verdict::Inconclusive
    };
    Ok(PositivityVerdict {
        params,
        threshold,
        potential_norm,
        quadrature_error,
        verdict,
        margin,
    })
}

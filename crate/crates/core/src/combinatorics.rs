//! Exact counting formulas for antisymmetric polynomial degrees.
//!
//! Everything here is a pure function of `(d, N)` or `(d, m)`:
//! monomial/shell counts, the determinant degree `V_d(N)`, the minimal
//! Laplace-Beltrami eigenvalue `lambda_d(N)`, and the asymptotic approximant
//! `xi_d(N)` with its explicit gap bound. Counting quantities are exact
//! big integers; `xi`, geometric means and the gap bound are evaluated in
//! high precision because d-th roots are irrational.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::real::{Real, RealCtx};
use crate::Result;

/// Binomial coefficient `C(n, k)`, exactly; `0` when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Number of degree-`p` monomials in `d` variables: `C(p + d - 1, d - 1)`.
pub fn monomial_count(d: u32, p: u64) -> BigInt {
    assert!(d >= 1, "monomial_count: d must be >= 1");
    binomial(p + d as u64 - 1, d as i64 - 1)
}

/// Number of monomials of degree at most `m` in `d` variables:
/// `N_m = C(m + d, d)`.
pub fn filled_count(d: u32, m: u64) -> BigInt {
    assert!(d >= 1, "filled_count: d must be >= 1");
    binomial(m + d as u64, d as i64)
}

/// The unique shell index `m` with `N_m <= N < N_{m+1}`.
///
/// `filled_count` is strictly increasing in `m`, so an exponential scan
/// followed by a binary search locates the shell without inverting the
/// closed form.
pub fn shell_index(d: u32, n: u64) -> u64 {
    assert!(d >= 1 && n >= 1, "shell_index: requires d >= 1, N >= 1");
    let n = BigInt::from(n);
    if filled_count(d, 1) > n {
        return 0;
    }
    let mut lo = 1u64; // filled_count(d, lo) <= n
    let mut hi = 2u64;
    while filled_count(d, hi) <= n {
        lo = hi;
        hi *= 2;
    }
    // invariant: filled(lo) <= n < filled(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if filled_count(d, mid) <= n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Total degree `V_d(N)` of the N-particle determinant in `d` dimensions.
///
/// Uses `V_d(N) = N (m+1) - (m+d+1)/(d+1) * N_m` with `m` the shell index;
/// the division is exact. At a filled shell this coincides with
/// `d m / (d+1) * N_m`.
pub fn vandermonde_degree(d: u32, n: u64) -> BigInt {
    assert!(d >= 1 && n >= 1, "vandermonde_degree: requires d >= 1, N >= 1");
    let m = shell_index(d, n);
    let nm = filled_count(d, m);
    let numer = BigInt::from(m + d as u64 + 1) * &nm;
    let (q, r) = num_integer::Integer::div_rem(&numer, &BigInt::from(d as u64 + 1));
    debug_assert!(r.is_zero(), "(m+d+1) N_m must be divisible by d+1");
    BigInt::from(n) * BigInt::from(m + 1) - q
}

/// Minimal eigenvalue of the Laplace-Beltrami operator on antisymmetric
/// functions on the sphere in `dN` dimensions:
/// `lambda_d(N) = V_d(N) (V_d(N) + dN - 2)`.
///
/// The formula also covers `d = 1, N = 2` (returns 1), matching the
/// odd-reflection constant.
pub fn lambda_min(d: u32, n: u64) -> BigInt {
    assert!(d >= 1 && n >= 2, "lambda_min: requires d >= 1, N >= 2");
    let v = vandermonde_degree(d, n);
    &v * (&v + BigInt::from(d as u64 * n) - BigInt::from(2))
}

/// All exact combinatorial quantities for a pair `(d, N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    pub d: u32,
    pub n: u64,
    /// Shell index `m` with `N_m <= N < N_{m+1}`.
    pub m: u64,
    /// Filled-shell count `N_m`.
    pub n_m: BigInt,
    /// Determinant degree `V_d(N)`.
    pub degree: BigInt,
    /// `degree * (degree + dN - 2)`; zero iff `N = 1`.
    pub lambda: BigInt,
}

impl DegreeReport {
    pub fn compute(d: u32, n: u64) -> DegreeReport {
        assert!(d >= 1 && n >= 1, "DegreeReport: requires d >= 1, N >= 1");
        let m = shell_index(d, n);
        let n_m = filled_count(d, m);
        let degree = vandermonde_degree(d, n);
        let lambda = &degree * (&degree + BigInt::from(d as u64 * n) - BigInt::from(2));
        DegreeReport {
            d,
            n,
            m,
            n_m,
            degree,
            lambda,
        }
    }
}

/// Exact constants controlling the `V_d - xi_d` gap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticBounds {
    pub d: u32,
    /// `C_d = (d-1)^2 / 8`, the mean-gap constant.
    pub c_d: BigRational,
    /// `D_d = d(2d+3)/(d+1) * C_d + d/2`.
    pub d_d: BigRational,
    /// Coefficient of `N^{1-1/d}` in the gap bound, as the pair
    /// `(rational, d)` standing for `rational * (d!)^{-1/d}`.
    pub gap_coefficient: (BigRational, u32),
}

impl AsymptoticBounds {
    pub fn new(d: u32) -> AsymptoticBounds {
        assert!(d >= 1);
        let d64 = d as u64;
        let c_d = BigRational::new(BigInt::from((d64 - 1) * (d64 - 1)), BigInt::from(8));
        let d_d = BigRational::new(BigInt::from(d64 * (2 * d64 + 3)), BigInt::from(d64 + 1))
            * &c_d
            + BigRational::new(BigInt::from(d64), BigInt::from(2));
        AsymptoticBounds {
            d,
            c_d,
            d_d: d_d.clone(),
            gap_coefficient: (d_d, d),
        }
    }
}

fn factorial(d: u32) -> BigInt {
    (1..=d as u64).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn xi_with_ctx(ctx: &mut RealCtx, d: u32, n: &BigRational) -> Real {
    // xi_d(N) = d/(d+1) (d! N^{d+1})^{1/d} - d/2 N; grouping the root this
    // way keeps d = 1 exact.
    let radicand = BigRational::from_integer(factorial(d)) * n.pow(d as i32 + 1);
    let radicand = ctx.from_ratio(&radicand);
    let root = ctx.nth_root(&radicand, d);
    let lead = ctx.from_ratio(&BigRational::new(BigInt::from(d), BigInt::from(d as u64 + 1)));
    let lead = ctx.mul(&lead, &root);
    let half_dn = n * &BigRational::new(BigInt::from(d), BigInt::from(2));
    let half_dn = ctx.from_ratio(&half_dn);
    ctx.sub(&lead, &half_dn)
}

/// The asymptotic approximant `xi_d(N)` at a real `N >= 1`.
pub fn xi_at(d: u32, n: &BigRational, digits: u32) -> Result<Real> {
    assert!(d >= 1, "xi: requires d >= 1");
    assert!(
        *n >= BigRational::one(),
        "xi: requires N >= 1"
    );
    let mut ctx = RealCtx::new(digits)?;
    Ok(xi_with_ctx(&mut ctx, d, n))
}

/// `xi_d(N)` at an integer `N`; exact (equal to `V_1(N)`) when `d = 1`.
pub fn xi(d: u32, n: u64, digits: u32) -> Result<Real> {
    xi_at(d, &BigRational::from_integer(BigInt::from(n)), digits)
}

/// Right-hand side of the gap estimate:
/// `D_d (d!)^{-1/d} N^{1-1/d} = D_d (N^{d-1}/d!)^{1/d}`.
pub fn gap_bound(d: u32, n: u64, digits: u32) -> Result<Real> {
    assert!(d >= 1 && n >= 1, "gap_bound: requires d >= 1, N >= 1");
    let mut ctx = RealCtx::new(digits)?;
    let bounds = AsymptoticBounds::new(d);
    let radicand = BigRational::new(BigInt::from(n).pow(d - 1), factorial(d));
    let radicand = ctx.from_ratio(&radicand);
    let root = ctx.nth_root(&radicand, d);
    let coeff = ctx.from_ratio(&bounds.d_d);
    Ok(ctx.mul(&coeff, &root))
}

/// Arithmetic and geometric means of `m+1, ..., m+d`.
///
/// The arithmetic mean is the exact rational `m + (d+1)/2`; the geometric
/// mean is a d-th root evaluated in high precision.
pub fn means(d: u32, m: u64, digits: u32) -> Result<(BigRational, Real)> {
    assert!(d >= 1 && m >= 1, "means: requires d >= 1, m >= 1");
    let arith = BigRational::from_integer(BigInt::from(m))
        + BigRational::new(BigInt::from(d as u64 + 1), BigInt::from(2));
    let mut ctx = RealCtx::new(digits)?;
    let mut prod = BigInt::one();
    for i in 1..=d as u64 {
        prod *= BigInt::from(m + i);
    }
    let prod = ctx.from_bigint(&prod);
    let geom = ctx.nth_root(&prod, d);
    Ok((arith, geom))
}

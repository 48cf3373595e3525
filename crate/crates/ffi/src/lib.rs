//! C ABI for the antisym library.
//!
//! Conventions:
//! * every fallible call returns an [`AntisymStatus`]; on failure a
//!   thread-local message is readable via [`antisym_last_error`],
//! * numeric results come back as decimal strings (exact integers and
//!   rationals verbatim, floats at 17 significant digits) owned by the
//!   library; release them with [`antisym_string_free`],
//! * polynomials are opaque [`AntisymPsi`] handles released with
//!   [`antisym_psi_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use antisym::combinatorics::{
    filled_count, gap_bound, lambda_min, shell_index, vandermonde_degree, xi,
};
use antisym::constants::{
    ckn_constant, hardy_constant, positivity_check, sobolev_antisym, sobolev_classical,
    RadialPotential, Verdict,
};
use antisym::polyalg::{slater_determinant_with_budget, Polynomial};
use antisym::real::{parse_rational, RealCtx, PRINTED_DIGITS};
use antisym::verify::{gap_csv, gap_series, oracle_sweep, reproduce_table};
use antisym::{Error, WorkBudget};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AntisymStatus {
    Ok = 0,
    InvalidArgument = 1,
    BudgetExceeded = 2,
    ParseError = 3,
    NonIntegrable = 4,
    PrecisionOutOfRange = 5,
    NullPointer = 6,
    Internal = 7,
}

/// Opaque handle to an exact multivariate polynomial (particle block width
/// `d` is carried along for rendering and symmetry checks).
pub struct AntisymPsi {
    poly: Polynomial,
    d: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message).unwrap_or_else(|_| CString::new("invalid error").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> AntisymStatus {
    match err {
        Error::InvalidArgument(_) => AntisymStatus::InvalidArgument,
        Error::BudgetExceeded { .. } => AntisymStatus::BudgetExceeded,
        Error::PrecisionOutOfRange(_) => AntisymStatus::PrecisionOutOfRange,
        Error::NonIntegrable(_) => AntisymStatus::NonIntegrable,
        Error::Parse { .. } => AntisymStatus::ParseError,
    }
}

fn fail(err: Error) -> AntisymStatus {
    let code = status_of(&err);
    set_error(err.to_string());
    code
}

/// Runs `f`, converting panics (contract violations) into `Internal`.
fn guarded(f: impl FnOnce() -> AntisymStatus) -> AntisymStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal panic".to_string());
            set_error(msg);
            AntisymStatus::Internal
        }
    }
}

/// Writes an owned C string through `out`.
///
/// # Safety
/// `out` must be a valid pointer.
unsafe fn write_string(out: *mut *mut c_char, s: String) -> AntisymStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            AntisymStatus::Ok
        }
        Err(_) => {
            set_error("result contained an interior NUL byte".to_string());
            AntisymStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, AntisymStatus> {
    if s.is_null() {
        set_error(format!("{what} is NULL"));
        return Err(AntisymStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        AntisymStatus::InvalidArgument
    })
}

macro_rules! require_nonnull {
    ($ptr:expr) => {
        if $ptr.is_null() {
            set_error(format!("{} is NULL", stringify!($ptr)));
            return AntisymStatus::NullPointer;
        }
    };
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn antisym_version() -> *const c_char {
    static VERSION: &[u8] = b"0.1.0\0";
    VERSION.as_ptr() as *const c_char
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn antisym_last_error() -> *const c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |c| c.as_ptr())
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must have been returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn antisym_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn check_dn(d: u32, n: u64, min_n: u64) -> Result<(), AntisymStatus> {
    if d < 1 || n < min_n {
        set_error(format!("requires d >= 1 and N >= {min_n}, got d={d}, N={n}"));
        return Err(AntisymStatus::InvalidArgument);
    }
    Ok(())
}

/// Degree of the minimal antisymmetric harmonic polynomial, as a decimal
/// string.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn antisym_vandermonde_degree(
    d: u32,
    n: u64,
    out: *mut *mut c_char,
) -> AntisymStatus {
    require_nonnull!(out);
    guarded(|| match check_dn(d, n, 1) {
        Err(code) => code,
        Ok(()) => write_string(out, vandermonde_degree(d, n).to_string()),
    })
}

/// Minimal Laplace-Beltrami eigenvalue on antisymmetric functions, as a
/// decimal string.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn antisym_lambda_min(
    d: u32,
    n: u64,
    out: *mut *mut c_char,
) -> AntisymStatus {
    require_nonnull!(out);
    guarded(|| match check_dn(d, n, 2) {
        Err(code) => code,
        Ok(()) => write_string(out, lambda_min(d, n).to_string()),
    })
}

/// Shell index `m` with `N_m <= N < N_{m+1}`, plus the filled count `N_m`
/// as a decimal string.
///
/// # Safety
/// All output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn antisym_shell(
    d: u32,
    n: u64,
    out_m: *mut u64,
    out_filled: *mut *mut c_char,
) -> AntisymStatus {
    require_nonnull!(out_m);
    require_nonnull!(out_filled);
    guarded(|| match check_dn(d, n, 1) {
        Err(code) => code,
        Ok(()) => {
            let m = shell_index(d, n);
            *out_m = m;
            write_string(out_filled, filled_count(d, m).to_string())
        }
    })
}

/// Sharp antisymmetric Hardy constant as an exact rational string
/// (e.g. `49/4`).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn antisym_hardy_constant(
    d: u32,
    n: u64,
    out: *mut *mut c_char,
) -> AntisymStatus {
    require_nonnull!(out);
    guarded(|| match check_dn(d, n, 2) {
        Err(code) => code,
        Ok(()) => write_string(out, hardy_constant(d, n).total.to_string()),
    })
}

unsafe fn write_real(
    out: *mut *mut c_char,
    digits: u32,
    value: antisym::real::Real,
) -> AntisymStatus {
    match RealCtx::new(digits) {
        Ok(mut ctx) => write_string(out, ctx.format_sig(&value, PRINTED_DIGITS)),
        Err(e) => fail(e),
    }
}

/// Asymptotic approximant `xi_d(N)` at 17 printed digits.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn antisym_xi(
    d: u32,
    n: u64,
    digits: u32,
    out: *mut *mut c_char,
) -> AntisymStatus {
    require_nonnull!(out);
    guarded(|| match check_dn(d, n, 1) {
        Err(code) => code,
        Ok(()) => match xi(d, n, digits) {
            Ok(v) => write_real(out, digits, v),
            Err(e) => fail(e),
        },
    })
}

/// Upper bound for `V_d(N) - xi_d(N)` at 17 printed digits.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn antisym_gap_bound(
    d: u32,
    n: u64,
    digits: u32,
    out: *mut *mut c_char,
) -> AntisymStatus {
    require_nonnull!(out);
    guarded(|| match check_dn(d, n, 1) {
        Err(code) => code,
        Ok(()) => match gap_bound(d, n, digits) {
            Ok(v) => write_real(out, digits, v),
            Err(e) => fail(e),
        },
    })
}

/// Classical sharp Sobolev constant `S(n)`, `n >= 3`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn antisym_sobolev_classical(
    n: u64,
    digits: u32,
    out: *mut *mut c_char,
) -> AntisymStatus {
    require_nonnull!(out);
    guarded(|| {
        if n < 3 {
            set_error(format!("sobolev_classical requires n >= 3, got {n}"));
            return AntisymStatus::InvalidArgument;
        }
        match sobolev_classical(n, digits) {
            Ok(v) => write_real(out, digits, v),
            Err(e) => fail(e),
        }
    })
}

/// Sharp antisymmetric Sobolev constant `S_A(dN)`, `dN >= 3`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn antisym_sobolev(
    d: u32,
    n: u64,
    digits: u32,
    out: *mut *mut c_char,
) -> AntisymStatus {
    require_nonnull!(out);
    guarded(|| match check_dn(d, n, 2) {
        Err(code) => code,
        Ok(()) => match sobolev_antisym(d, n, digits) {
            Ok(s) => write_real(out, digits, s.antisymmetric),
            Err(e) => fail(e),
        },
    })
}

/// CKN constants at interpolation parameter `nu` (a decimal or fraction
/// string in `[0, 1]`): the inequality constant through `out_lower` and the
/// interpolation constant through `out_upper`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn antisym_ckn_constant(
    d: u32,
    n: u64,
    nu: *const c_char,
    digits: u32,
    out_upper: *mut *mut c_char,
    out_lower: *mut *mut c_char,
) -> AntisymStatus {
    require_nonnull!(out_upper);
    require_nonnull!(out_lower);
    guarded(|| {
        let nu_str = match read_str(nu, "nu") {
            Ok(s) => s,
            Err(code) => return code,
        };
        let nu = match parse_rational(nu_str) {
            Ok(v) => v,
            Err(m) => {
                set_error(format!("nu: {m}"));
                return AntisymStatus::InvalidArgument;
            }
        };
        if let Err(code) = check_dn(d, n, 2) {
            return code;
        }
        match ckn_constant(d, n, &nu, digits) {
            Ok(k) => {
                let code = write_real(out_upper, digits, k.upper);
                if code != AntisymStatus::Ok {
                    return code;
                }
                write_real(out_lower, digits, k.lower_form)
            }
            Err(e) => fail(e),
        }
    })
}

/// Builds the minimal antisymmetric harmonic polynomial for `(d, N)` as an
/// opaque handle. The expansion has `N!` terms and is rejected beyond the
/// budget (`ANTISYM_BUDGET` overrides the default cap of 400000).
///
/// # Safety
/// `out` must be a valid pointer; the handle must be released with
/// [`antisym_psi_free`].
#[no_mangle]
pub unsafe extern "C" fn antisym_psi_new(
    d: u32,
    n: u64,
    out: *mut *mut AntisymPsi,
) -> AntisymStatus {
    require_nonnull!(out);
    guarded(|| match check_dn(d, n, 1) {
        Err(code) => code,
        Ok(()) => {
            let budget = WorkBudget::DETERMINANT_DEFAULT.with_env_override();
            match slater_determinant_with_budget(d, n, budget) {
                Ok(poly) => {
                    *out = Box::into_raw(Box::new(AntisymPsi { poly, d }));
                    AntisymStatus::Ok
                }
                Err(e) => fail(e),
            }
        }
    })
}

/// Releases a polynomial handle.
///
/// # Safety
/// `psi` must come from [`antisym_psi_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn antisym_psi_free(psi: *mut AntisymPsi) {
    if !psi.is_null() {
        drop(Box::from_raw(psi));
    }
}

/// Canonical text rendering of the polynomial.
///
/// # Safety
/// `psi` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn antisym_psi_render(
    psi: *const AntisymPsi,
    out: *mut *mut c_char,
) -> AntisymStatus {
    require_nonnull!(psi);
    require_nonnull!(out);
    guarded(|| {
        let h = &*psi;
        write_string(out, h.poly.render(h.d))
    })
}

/// Term count and total degree of the polynomial.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn antisym_psi_stats(
    psi: *const AntisymPsi,
    out_terms: *mut u64,
    out_degree: *mut u64,
) -> AntisymStatus {
    require_nonnull!(psi);
    require_nonnull!(out_terms);
    require_nonnull!(out_degree);
    guarded(|| {
        let h = &*psi;
        *out_terms = h.poly.term_count() as u64;
        *out_degree = h.poly.total_degree();
        AntisymStatus::Ok
    })
}

/// Exact symbolic checks: antisymmetry under block transpositions and
/// vanishing Laplacian.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn antisym_psi_check(
    psi: *const AntisymPsi,
    out_antisymmetric: *mut bool,
    out_harmonic: *mut bool,
) -> AntisymStatus {
    require_nonnull!(psi);
    require_nonnull!(out_antisymmetric);
    require_nonnull!(out_harmonic);
    guarded(|| {
        let h = &*psi;
        match h.poly.is_antisymmetric(h.d) {
            Ok(a) => {
                *out_antisymmetric = a;
                *out_harmonic = h.poly.laplacian().is_zero();
                AntisymStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Reference eigenvalue table as CSV
/// (`d,N,lambda_computed,lambda_paper,match`); `out_all_match` reports the
/// comparison outcome.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn antisym_table_csv(
    out: *mut *mut c_char,
    out_all_match: *mut bool,
) -> AntisymStatus {
    require_nonnull!(out);
    require_nonnull!(out_all_match);
    guarded(|| {
        let t = reproduce_table();
        *out_all_match = t.all_match();
        write_string(out, t.to_csv())
    })
}

/// Gap series CSV (`d,N,V,xi,gap,bound,is_cusp`) for
/// `d in d_lo..=d_hi, N in 2..=n_max`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn antisym_gap_csv(
    d_lo: u32,
    d_hi: u32,
    n_max: u64,
    digits: u32,
    out: *mut *mut c_char,
) -> AntisymStatus {
    require_nonnull!(out);
    guarded(|| {
        if d_lo < 1 || d_hi < d_lo || n_max < 2 {
            set_error(format!(
                "requires 1 <= d_lo <= d_hi and n_max >= 2, got {d_lo}..{d_hi}, {n_max}"
            ));
            return AntisymStatus::InvalidArgument;
        }
        let mut list = Vec::new();
        for d in d_lo..=d_hi {
            match gap_series(d, n_max, digits) {
                Ok(s) => list.push(s),
                Err(e) => return fail(e),
            }
        }
        write_string(out, gap_csv(&list))
    })
}

/// Oracle sweep CSV over all `(d, N)` with `dN <= max_dn`;
/// `out_all_agree` reports whether every non-skipped check agreed.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn antisym_oracle_csv(
    max_dn: u32,
    out: *mut *mut c_char,
    out_all_agree: *mut bool,
) -> AntisymStatus {
    require_nonnull!(out);
    require_nonnull!(out_all_agree);
    guarded(|| {
        if max_dn < 2 {
            set_error("max_dn must be at least 2".to_string());
            return AntisymStatus::InvalidArgument;
        }
        let budget = WorkBudget::ORACLE_DEFAULT.with_env_override();
        match oracle_sweep(max_dn, budget) {
            Ok(sweep) => {
                *out_all_agree = sweep.all_agree();
                write_string(out, sweep.to_csv())
            }
            Err(e) => fail(e),
        }
    })
}

/// Positivity screening of `-Delta - V` from a radial potential descriptor
/// (the same grammar the CLI reads from files). On success writes
/// `1` (positive) or `0` (inconclusive) through `out_positive` and the
/// threshold/norm pair as strings.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn antisym_positivity_check(
    descriptor: *const c_char,
    d: u32,
    n: u64,
    nu: *const c_char,
    digits: u32,
    out_positive: *mut bool,
    out_threshold: *mut *mut c_char,
    out_norm: *mut *mut c_char,
) -> AntisymStatus {
    require_nonnull!(out_positive);
    require_nonnull!(out_threshold);
    require_nonnull!(out_norm);
    guarded(|| {
        let text = match read_str(descriptor, "descriptor") {
            Ok(s) => s,
            Err(code) => return code,
        };
        let nu_str = match read_str(nu, "nu") {
            Ok(s) => s,
            Err(code) => return code,
        };
        let nu = match parse_rational(nu_str) {
            Ok(v) => v,
            Err(m) => {
                set_error(format!("nu: {m}"));
                return AntisymStatus::InvalidArgument;
            }
        };
        let potential = match RadialPotential::parse(text) {
            Ok(p) => p,
            Err(e) => return fail(e),
        };
        match positivity_check(d, n, &nu, &potential, digits) {
            Ok(v) => {
                *out_positive = v.verdict == Verdict::Positive;
                let code = write_real(out_threshold, digits, v.threshold);
                if code != AntisymStatus::Ok {
                    return code;
                }
                write_real(out_norm, digits, v.potential_norm)
            }
            Err(e) => fail(e),
        }
    })
}

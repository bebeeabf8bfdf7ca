//! C ABI over the nabla-fde core: opaque handles for systems and solved
//! responses, status codes for every fallible call, and plain buffers for
//! trajectory export. All functions are safe to call from any thread; the
//! handles are immutable after construction.
//!
//! The matching header is generated into `include/nabla_fde.h` at build
//! time.

use nabla_fde::classifier::DEFAULT_BOUNDARY_TOL;
use nabla_fde::mittag_leffler::DEFAULT_TOL;
use nabla_fde::{
    classify_zero_input, critical_radius, ml_eval, principal_pole, Error, InputSignal, MlQuery,
    Response, SystemSpec, Verdict,
};
use std::os::raw::c_char;

/// Status code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NfdeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// The system coefficient lambda must not equal 1.
    LambdaOne = 3,
    InsufficientHistory = 4,
    HorizonTooShort = 5,
    /// The series only converges for |lambda| < 1; use the recursive solver.
    SeriesNotConvergent = 6,
    /// An iteration hit its term cap without settling.
    NonConverged = 7,
    DomainError = 8,
    TransformPole = 9,
    /// Output buffer too small for the requested copy.
    BufferTooSmall = 10,
    /// lambda = 0 has no pole of the form lambda^(1/alpha).
    NoPole = 11,
}

fn status_of(e: &Error) -> NfdeStatus {
    match e {
        Error::NonPositiveAlpha(_) | Error::InvalidArgument(_) => NfdeStatus::InvalidArgument,
        Error::LambdaOne => NfdeStatus::LambdaOne,
        Error::InsufficientHistory { .. } => NfdeStatus::InsufficientHistory,
        Error::HorizonTooShort { .. } => NfdeStatus::HorizonTooShort,
        Error::SeriesNotConvergent(_) => NfdeStatus::SeriesNotConvergent,
        Error::NonConvergedAtCap { .. } => NfdeStatus::NonConverged,
        Error::Domain(_) => NfdeStatus::DomainError,
        Error::TransformPole => NfdeStatus::TransformPole,
        Error::ScenarioParse { .. } | Error::Io { .. } => NfdeStatus::InvalidArgument,
    }
}

/// Solver selection for `nfde_solve`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NfdeMethod {
    /// Recursive when |lambda| >= 0.95 or alpha is integer-adjacent,
    /// explicit otherwise.
    Auto = 0,
    Explicit = 1,
    Recursive = 2,
}

/// Zero-input behavior verdict.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NfdeVerdict {
    Divergent = 0,
    Convergent = 1,
    MonotoneConvergent = 2,
    ConvergentPossibleOvershoot = 3,
    Constant = 4,
    PolynomialDivergent = 5,
    Oscillating = 6,
    OnBoundary = 7,
}

impl From<Verdict> for NfdeVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Divergent => NfdeVerdict::Divergent,
            Verdict::Convergent => NfdeVerdict::Convergent,
            Verdict::MonotoneConvergent => NfdeVerdict::MonotoneConvergent,
            Verdict::ConvergentPossibleOvershoot => NfdeVerdict::ConvergentPossibleOvershoot,
            Verdict::Constant => NfdeVerdict::Constant,
            Verdict::PolynomialDivergent => NfdeVerdict::PolynomialDivergent,
            Verdict::Oscillating => NfdeVerdict::Oscillating,
            Verdict::OnBoundary => NfdeVerdict::OnBoundary,
        }
    }
}

/// Opaque system definition handle.
pub struct NfdeSystem(SystemSpec);

/// Opaque solved trajectory handle.
pub struct NfdeResponse(Response);

unsafe fn slice_from<'a>(ptr: *const f64, len: usize) -> Option<&'a [f64]> {
    if len == 0 {
        Some(&[])
    } else if ptr.is_null() {
        None
    } else {
        Some(unsafe { std::slice::from_raw_parts(ptr, len) })
    }
}

/// Creates a system handle for `caputo_diff(y) = lambda*y + u` with order
/// `alpha`, origin `a`, and the `n_b = ceil(alpha)` initial conditions `b`.
///
/// On success writes a handle (free with [`nfde_system_free`]) and returns
/// `Ok`.
///
/// # Safety
/// `b` must point to `n_b` readable doubles and `out` to a writable pointer
/// slot.
#[no_mangle]
pub unsafe extern "C" fn nfde_system_new(
    alpha: f64,
    lambda: f64,
    a: i64,
    b: *const f64,
    n_b: usize,
    out: *mut *mut NfdeSystem,
) -> NfdeStatus {
    if out.is_null() {
        return NfdeStatus::NullPointer;
    }
    let Some(b) = (unsafe { slice_from(b, n_b) }) else {
        return NfdeStatus::NullPointer;
    };
    match SystemSpec::new(alpha, lambda, a, b.to_vec()) {
        Ok(spec) => {
            unsafe { *out = Box::into_raw(Box::new(NfdeSystem(spec))) };
            NfdeStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Releases a system handle. Null is ignored.
///
/// # Safety
/// `sys` must be a pointer returned by [`nfde_system_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nfde_system_free(sys: *mut NfdeSystem) {
    if !sys.is_null() {
        drop(unsafe { Box::from_raw(sys) });
    }
}

/// Solves the system over `horizon` steps. `u` may be null for zero input,
/// otherwise it must hold `u_len == horizon` samples on a+1 ..= a+horizon.
/// `tol` is the series tolerance for the explicit path (pass 0 for the
/// default). On success writes a response handle (free with
/// [`nfde_response_free`]).
///
/// # Safety
/// `sys` must be a live system handle; `u` null or `u_len` readable doubles;
/// `out` a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn nfde_solve(
    sys: *const NfdeSystem,
    method: NfdeMethod,
    u: *const f64,
    u_len: usize,
    horizon: usize,
    tol: f64,
    out: *mut *mut NfdeResponse,
) -> NfdeStatus {
    if sys.is_null() || out.is_null() {
        return NfdeStatus::NullPointer;
    }
    let spec = unsafe { &(*sys).0 };
    let input = if u.is_null() && u_len == 0 {
        InputSignal::Zero
    } else {
        match unsafe { slice_from(u, u_len) } {
            Some(s) => InputSignal::Table(s.to_vec()),
            None => return NfdeStatus::NullPointer,
        }
    };
    let tol = if tol > 0.0 { tol } else { DEFAULT_TOL };
    let use_recursive = match method {
        NfdeMethod::Recursive => true,
        NfdeMethod::Explicit => false,
        NfdeMethod::Auto => {
            spec.lambda().abs() >= 0.95
                || (spec.alpha() - spec.alpha().round()).abs() <= 1e-12
        }
    };
    let solved = if use_recursive {
        nabla_fde::solve_recursive(spec, &input, horizon)
    } else {
        nabla_fde::solve_explicit(spec, &input, horizon, tol)
    };
    match solved {
        Ok(r) => {
            unsafe { *out = Box::into_raw(Box::new(NfdeResponse(r))) };
            NfdeStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Number of stored samples (may be shorter than the requested horizon if
/// the trajectory overflowed).
///
/// # Safety
/// `resp` must be a live response handle.
#[no_mangle]
pub unsafe extern "C" fn nfde_response_len(resp: *const NfdeResponse) -> usize {
    if resp.is_null() {
        return 0;
    }
    unsafe { &(*resp).0 }.len()
}

/// The initial instant a; samples cover a+1 ..= a+len.
///
/// # Safety
/// `resp` must be a live response handle.
#[no_mangle]
pub unsafe extern "C" fn nfde_response_origin(resp: *const NfdeResponse) -> i64 {
    if resp.is_null() {
        return 0;
    }
    unsafe { &(*resp).0 }.origin()
}

/// Copies the trajectory into `out` (capacity `cap` doubles).
///
/// # Safety
/// `resp` must be a live response handle and `out` writable for `cap`
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn nfde_response_values(
    resp: *const NfdeResponse,
    out: *mut f64,
    cap: usize,
) -> NfdeStatus {
    if resp.is_null() || out.is_null() {
        return NfdeStatus::NullPointer;
    }
    let values = unsafe { &(*resp).0 }.values();
    if cap < values.len() {
        return NfdeStatus::BufferTooSmall;
    }
    unsafe { std::ptr::copy_nonoverlapping(values.as_ptr(), out, values.len()) };
    NfdeStatus::Ok
}

/// True when the march left the f64 range; the offending grid point is
/// written to `at` (if non-null) and the stored trajectory stops before it.
///
/// # Safety
/// `resp` must be a live response handle; `at` null or writable.
#[no_mangle]
pub unsafe extern "C" fn nfde_response_overflowed(
    resp: *const NfdeResponse,
    at: *mut i64,
) -> bool {
    if resp.is_null() {
        return false;
    }
    match unsafe { &(*resp).0 }.overflow_at() {
        Some(k) => {
            if !at.is_null() {
                unsafe { *at = k };
            }
            true
        }
        None => false,
    }
}

/// Releases a response handle. Null is ignored.
///
/// # Safety
/// `resp` must be a pointer returned by [`nfde_solve`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nfde_response_free(resp: *mut NfdeResponse) {
    if !resp.is_null() {
        drop(unsafe { Box::from_raw(resp) });
    }
}

/// Evaluates the discrete Mittag-Leffler function F_{alpha,beta}(lambda,k,a).
/// Pass `tol <= 0` for the default tolerance. `terms_used` and
/// `truncation_bound` may be null.
///
/// # Safety
/// `value` must be writable; `terms_used`/`truncation_bound` null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn nfde_ml_eval(
    alpha: f64,
    beta: f64,
    lambda: f64,
    a: i64,
    k: i64,
    tol: f64,
    value: *mut f64,
    terms_used: *mut usize,
    truncation_bound: *mut f64,
) -> NfdeStatus {
    if value.is_null() {
        return NfdeStatus::NullPointer;
    }
    let tol = if tol > 0.0 { tol } else { DEFAULT_TOL };
    match ml_eval(&MlQuery { alpha, beta, lambda, a, k }, tol) {
        Ok(r) => {
            unsafe { *value = r.value };
            if !terms_used.is_null() {
                unsafe { *terms_used = r.terms_used };
            }
            if !truncation_bound.is_null() {
                unsafe { *truncation_bound = r.truncation_bound };
            }
            NfdeStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Classifies the zero-input response of (alpha, lambda, b). Pass
/// `boundary_tol <= 0` for the default band.
///
/// # Safety
/// `b` must point to `n_b` readable doubles and `verdict` be writable.
#[no_mangle]
pub unsafe extern "C" fn nfde_classify(
    alpha: f64,
    lambda: f64,
    b: *const f64,
    n_b: usize,
    boundary_tol: f64,
    verdict: *mut NfdeVerdict,
) -> NfdeStatus {
    if verdict.is_null() {
        return NfdeStatus::NullPointer;
    }
    let Some(b) = (unsafe { slice_from(b, n_b) }) else {
        return NfdeStatus::NullPointer;
    };
    let tol = if boundary_tol > 0.0 { boundary_tol } else { DEFAULT_BOUNDARY_TOL };
    match classify_zero_input(alpha, lambda, b, tol) {
        Ok(c) => {
            unsafe { *verdict = c.verdict.into() };
            NfdeStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// The pole lambda^(1/alpha) on the principal branch; `NoPole` for
/// lambda = 0.
///
/// # Safety
/// `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nfde_principal_pole(
    alpha: f64,
    lambda: f64,
    re: *mut f64,
    im: *mut f64,
) -> NfdeStatus {
    if re.is_null() || im.is_null() {
        return NfdeStatus::NullPointer;
    }
    if !(alpha > 0.0) {
        return NfdeStatus::InvalidArgument;
    }
    match principal_pole(alpha, lambda) {
        Some(p) => {
            unsafe {
                *re = p.re;
                *im = p.im;
            }
            NfdeStatus::Ok
        }
        None => NfdeStatus::NoPole,
    }
}

/// The |lambda| threshold 2^alpha cos^alpha(pi/alpha) for alpha > 2.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nfde_critical_radius(alpha: f64, out: *mut f64) -> NfdeStatus {
    if out.is_null() {
        return NfdeStatus::NullPointer;
    }
    match critical_radius(alpha) {
        Ok(v) => {
            unsafe { *out = v };
            NfdeStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Static description of a status code. Never null; do not free.
#[no_mangle]
pub extern "C" fn nfde_status_message(status: NfdeStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        NfdeStatus::Ok => b"ok\0",
        NfdeStatus::NullPointer => b"null pointer argument\0",
        NfdeStatus::InvalidArgument => b"invalid argument\0",
        NfdeStatus::LambdaOne => b"lambda must not equal 1\0",
        NfdeStatus::InsufficientHistory => b"insufficient pre-origin history\0",
        NfdeStatus::HorizonTooShort => b"horizon too short\0",
        NfdeStatus::SeriesNotConvergent => {
            b"series does not converge for |lambda| >= 1; use the recursive solver\0"
        }
        NfdeStatus::NonConverged => b"iteration hit its term cap\0",
        NfdeStatus::DomainError => b"domain error\0",
        NfdeStatus::TransformPole => b"transform pole hit\0",
        NfdeStatus::BufferTooSmall => b"output buffer too small\0",
        NfdeStatus::NoPole => b"lambda = 0 has no pole\0",
    };
    s.as_ptr() as *const c_char
}

/// Static name of a verdict. Never null; do not free.
#[no_mangle]
pub extern "C" fn nfde_verdict_name(verdict: NfdeVerdict) -> *const c_char {
    let s: &'static [u8] = match verdict {
        NfdeVerdict::Divergent => b"Divergent\0",
        NfdeVerdict::Convergent => b"Convergent\0",
        NfdeVerdict::MonotoneConvergent => b"MonotoneConvergent\0",
        NfdeVerdict::ConvergentPossibleOvershoot => b"ConvergentPossibleOvershoot\0",
        NfdeVerdict::Constant => b"Constant\0",
        NfdeVerdict::PolynomialDivergent => b"PolynomialDivergent\0",
        NfdeVerdict::Oscillating => b"Oscillating\0",
        NfdeVerdict::OnBoundary => b"OnBoundary\0",
    };
    s.as_ptr() as *const c_char
}

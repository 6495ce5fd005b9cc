//! C ABI over `ftl-core`.
//!
//! Every fallible function returns an [`FtlStatus`] and writes its result
//! through an out-pointer. On failure the message is kept per thread and can
//! be copied out with [`ftl_last_error_message`]. Handles are opaque and must
//! be released with their matching `*_free` function.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::c_char;
use std::ptr;

use ftl_core::discounting::{annualized_rate, fit_discount, DiscountParams, FitOptions};
use ftl_core::membership::MembershipParams;
use ftl_core::prospect::{disjunction_change, restore_change, SCurveParams};
use ftl_core::temporal::simulate_time_average;
use ftl_core::time_preference::{IntertemporalChoice, Timing};
use ftl_core::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FtlStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Range = 3,
    Params = 4,
    Empty = 5,
    InsufficientData = 6,
    ProbabilityMass = 7,
    Mode = 8,
    Crossing = 9,
}

impl From<&Error> for FtlStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Domain(_) => FtlStatus::Domain,
            Error::Range(_) => FtlStatus::Range,
            Error::Params(_) => FtlStatus::Params,
            Error::Empty(_) => FtlStatus::Empty,
            Error::InsufficientData { .. } => FtlStatus::InsufficientData,
            Error::ProbabilityMass(_) => FtlStatus::ProbabilityMass,
            Error::Mode(_) => FtlStatus::Mode,
            Error::Crossing(_) => FtlStatus::Crossing,
        }
    }
}

/// Membership function parameters.
pub struct FtlMembership(MembershipParams);

/// Discount curve parameters `(h, rho)`.
pub struct FtlDiscount(DiscountParams);

/// Prospect S-curve parameters `(p, rho)`.
pub struct FtlSCurve(SCurveParams);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(e: Error) -> FtlStatus {
    let status = FtlStatus::from(&e);
    set_error(e.to_string());
    status
}

fn null(name: &str) -> FtlStatus {
    set_error(format!("null pointer: {name}"));
    FtlStatus::NullPointer
}

/// Writes `value` through `out` or records the error.
unsafe fn write_out<T>(result: ftl_core::Result<T>, out: *mut T) -> FtlStatus {
    if out.is_null() {
        return null("out");
    }
    match result {
        Ok(v) => {
            *out = v;
            FtlStatus::Ok
        }
        Err(e) => fail(e),
    }
}

unsafe fn boxed<T, H>(result: ftl_core::Result<T>, wrap: fn(T) -> H, out: *mut *mut H) -> FtlStatus {
    write_out(result.map(|v| Box::into_raw(Box::new(wrap(v)))), out)
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len - 1` bytes). Returns the full message length in bytes,
/// excluding the terminator.
#[no_mangle]
pub unsafe extern "C" fn ftl_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Generalized exponential `(1 + h a)^(1/h)`.
#[no_mangle]
pub unsafe extern "C" fn ftl_gexp(h: f64, a: f64, out: *mut f64) -> FtlStatus {
    write_out(ftl_core::gexp(h, a), out)
}

/// Generalized logarithm, the inverse of [`ftl_gexp`] in its argument.
#[no_mangle]
pub unsafe extern "C" fn ftl_glog(p: f64, v: f64, out: *mut f64) -> FtlStatus {
    write_out(ftl_core::glog(p, v), out)
}

#[no_mangle]
pub unsafe extern "C" fn ftl_meiotic_change(x: f64, s: f64, out: *mut f64) -> FtlStatus {
    write_out(ftl_core::meiotic_change(x, s), out)
}

#[no_mangle]
pub unsafe extern "C" fn ftl_hyperbolic_change(y: f64, s: f64, out: *mut f64) -> FtlStatus {
    write_out(ftl_core::hyperbolic_change(y, s), out)
}

#[no_mangle]
pub unsafe extern "C" fn ftl_membership_new(alpha: f64, beta: f64, out: *mut *mut FtlMembership) -> FtlStatus {
    boxed(MembershipParams::new(alpha, beta), FtlMembership, out)
}

/// The default membership function.
#[no_mangle]
pub extern "C" fn ftl_membership_default() -> *mut FtlMembership {
    Box::into_raw(Box::new(FtlMembership(MembershipParams::default())))
}

#[no_mangle]
pub unsafe extern "C" fn ftl_membership_free(handle: *mut FtlMembership) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Degree of membership of the change `x`.
#[no_mangle]
pub unsafe extern "C" fn ftl_membership_degree(handle: *const FtlMembership, x: f64, out: *mut f64) -> FtlStatus {
    match handle.as_ref() {
        Some(m) => write_out(m.0.degree(x), out),
        None => null("handle"),
    }
}

#[no_mangle]
pub unsafe extern "C" fn ftl_discount_new(h: f64, rho: f64, out: *mut *mut FtlDiscount) -> FtlStatus {
    boxed(DiscountParams::new(h, rho), FtlDiscount, out)
}

/// Discount parameters implied by arbitrage between a small reward (sense
/// `s_small`, `n` trials) and a large one (sense `s_large`).
#[no_mangle]
pub unsafe extern "C" fn ftl_discount_from_arbitrage(
    s_small: f64,
    s_large: f64,
    n: f64,
    kappa: f64,
    wealth: f64,
    out: *mut *mut FtlDiscount,
) -> FtlStatus {
    boxed(DiscountParams::from_arbitrage(s_small, s_large, n, kappa, wealth), FtlDiscount, out)
}

/// Least-squares fit to `len` `(delays[i], factors[i])` points. The residual
/// is written to `residual` when it is not null.
#[no_mangle]
pub unsafe extern "C" fn ftl_discount_fit(
    delays: *const f64,
    factors: *const f64,
    len: usize,
    out: *mut *mut FtlDiscount,
    residual: *mut f64,
) -> FtlStatus {
    if delays.is_null() || factors.is_null() {
        return null("data");
    }
    let delays = std::slice::from_raw_parts(delays, len);
    let factors = std::slice::from_raw_parts(factors, len);
    let points: Vec<(f64, f64)> = delays.iter().copied().zip(factors.iter().copied()).collect();
    let fit = fit_discount(&points, FitOptions::default());
    if let (Ok(f), false) = (&fit, residual.is_null()) {
        *residual = f.residual;
    }
    boxed(fit.map(|f| f.params), FtlDiscount, out)
}

#[no_mangle]
pub unsafe extern "C" fn ftl_discount_free(handle: *mut FtlDiscount) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

#[no_mangle]
pub unsafe extern "C" fn ftl_discount_params(handle: *const FtlDiscount, h: *mut f64, rho: *mut f64) -> FtlStatus {
    match handle.as_ref() {
        Some(d) if !h.is_null() && !rho.is_null() => {
            *h = d.0.h();
            *rho = d.0.rho();
            FtlStatus::Ok
        }
        Some(_) => null("out"),
        None => null("handle"),
    }
}

/// Discount factor after `n` periods.
#[no_mangle]
pub unsafe extern "C" fn ftl_discount_eval(handle: *const FtlDiscount, n: f64, out: *mut f64) -> FtlStatus {
    match handle.as_ref() {
        Some(d) => write_out(d.0.discount(n), out),
        None => null("handle"),
    }
}

#[no_mangle]
pub unsafe extern "C" fn ftl_annualized_rate(now: f64, later: f64, years: f64, out: *mut f64) -> FtlStatus {
    write_out(annualized_rate(now, later, years), out)
}

#[no_mangle]
pub unsafe extern "C" fn ftl_scurve_new(p: f64, rho: f64, out: *mut *mut FtlSCurve) -> FtlStatus {
    boxed(SCurveParams::new(p, rho), FtlSCurve, out)
}

#[no_mangle]
pub unsafe extern "C" fn ftl_scurve_free(handle: *mut FtlSCurve) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

#[no_mangle]
pub unsafe extern "C" fn ftl_scurve_eval(handle: *const FtlSCurve, x: f64, out: *mut f64) -> FtlStatus {
    match handle.as_ref() {
        Some(s) => write_out(s.0.value(x), out),
        None => null("handle"),
    }
}

/// Loss below which the S-curve turns risk seeking. `found` is set to 0 and
/// `out` left untouched when there is no interior crossover.
#[no_mangle]
pub unsafe extern "C" fn ftl_scurve_crossover(handle: *const FtlSCurve, out: *mut f64, found: *mut bool) -> FtlStatus {
    let Some(s) = handle.as_ref() else { return null("handle") };
    if out.is_null() || found.is_null() {
        return null("out");
    }
    match s.0.risk_crossover() {
        Ok(Some(x)) => {
            *out = x;
            *found = true;
            FtlStatus::Ok
        }
        Ok(None) => {
            *found = false;
            FtlStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Sets `delayed` to whether `large` after `trials` periods beats `small` now.
#[no_mangle]
pub unsafe extern "C" fn ftl_prefer_delayed(
    membership: *const FtlMembership,
    small: f64,
    large: f64,
    wealth: f64,
    small_sense: f64,
    large_sense: f64,
    trials: f64,
    delayed: *mut bool,
) -> FtlStatus {
    let Some(m) = membership.as_ref() else { return null("membership") };
    let choice = IntertemporalChoice { small, large, wealth, small_sense, large_sense, trials };
    write_out(choice.decide(&m.0).map(|d| d.choice == Timing::Later), delayed)
}

/// Geometric time-average growth factor of a gamble paying `x` with
/// probability `p` each period.
#[no_mangle]
pub unsafe extern "C" fn ftl_simulate_time_average(x: f64, p: f64, periods: u64, seed: u64, out: *mut f64) -> FtlStatus {
    write_out(simulate_time_average(x, p, periods, seed), out)
}

/// Per-period change of `x1` with probability `p` or `x2` with probability `q`.
#[no_mangle]
pub unsafe extern "C" fn ftl_disjunction_change(x1: f64, p: f64, x2: f64, q: f64, out: *mut f64) -> FtlStatus {
    write_out(disjunction_change(x1, p, x2, q).map(|d| d.change), out)
}

/// Change needed to undo the change `x`.
#[no_mangle]
pub unsafe extern "C" fn ftl_restore_change(x: f64, out: *mut f64) -> FtlStatus {
    write_out(restore_change(x), out)
}

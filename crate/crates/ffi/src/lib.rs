//! C ABI over the `symhyp` calculators.
//!
//! Every fallible entry point returns a [`SymhypStatus`] and writes its
//! result through an out-pointer. On failure the message is kept per thread
//! and can be fetched with [`symhyp_last_error`]. Handles returned through
//! out-pointers are owned by the caller and released with the matching
//! `_free` function; strings are released with [`symhyp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_traits::ToPrimitive;
use symhyp::bounds::{self, BoundReport, Value};
use symhyp::curvature;
use symhyp::perm_rep::{self, ConditionParams, ConditionReport, CycleType};
use symhyp::rational;
use symhyp::{BigRational, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymhypStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    EmptyInput = 3,
    Resource = 4,
    Unsupported = 5,
    Parse = 6,
    /// A Rust panic was caught at the boundary.
    Internal = 7,
}

/// Exact rational number.
pub struct SymhypRational(BigRational);

/// Outcome of a condition check over all non-identity cycle types.
pub struct SymhypConditionReport(ConditionReport);

/// A degree bound, threshold or criterion.
pub struct SymhypBoundReport(BoundReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> SymhypStatus {
    match err {
        Error::EmptyInput(_) => SymhypStatus::EmptyInput,
        Error::Domain(_) => SymhypStatus::Domain,
        Error::Resource { .. } => SymhypStatus::Resource,
        Error::Unsupported(_) => SymhypStatus::Unsupported,
        Error::Parse(_) => SymhypStatus::Parse,
    }
}

enum Failure {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

/// Runs `f`, translating errors and panics into a status and the thread's
/// last error.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SymhypStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SymhypStatus::Ok
        }
        Ok(Err(Failure::Null(name))) => {
            set_error(format!("null pointer passed as {name}"));
            SymhypStatus::NullPointer
        }
        Ok(Err(Failure::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            SymhypStatus::Internal
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(name))
}

unsafe fn write<T>(out: *mut T, name: &'static str, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(name));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_rational(out: *mut *mut SymhypRational, value: BigRational) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    out.write(Box::into_raw(Box::new(SymhypRational(value))));
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("nul bytes removed")
        .into_raw()
}

/// Message of the last failed call on this thread, or NULL after a
/// successful one. Free with `symhyp_string_free`.
#[no_mangle]
pub extern "C" fn symhyp_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null_mut(), |s| s.clone().into_raw())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn symhyp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn symhyp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

// Rationals

/// Parses `"p/q"`, an integer or a decimal.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symhyp_rational_parse(
    text: *const c_char,
    out: *mut *mut SymhypRational,
) -> SymhypStatus {
    guard(|| {
        let text = deref(text, "text")?;
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Error::Parse("text is not UTF-8".into()))?;
        write_rational(out, rational::parse_rational(text)?)
    })
}

/// `num / den`, or NULL when `den` is zero.
#[no_mangle]
pub extern "C" fn symhyp_rational_new(num: i64, den: i64) -> *mut SymhypRational {
    if den == 0 {
        set_error("zero denominator".into());
        return ptr::null_mut();
    }
    Box::into_raw(Box::new(SymhypRational(rational::ratio(num, den))))
}

/// Lowest-terms `"p/q"`, or `"p"` for integers. Free with
/// `symhyp_string_free`.
///
/// # Safety
/// `q` must be NULL or a live rational handle.
#[no_mangle]
pub unsafe extern "C" fn symhyp_rational_to_string(q: *const SymhypRational) -> *mut c_char {
    match q.as_ref() {
        Some(q) => into_c_string(rational::exact(&q.0)),
        None => ptr::null_mut(),
    }
}

/// Nearest double; NaN for a NULL handle.
///
/// # Safety
/// `q` must be NULL or a live rational handle.
#[no_mangle]
pub unsafe extern "C" fn symhyp_rational_to_f64(q: *const SymhypRational) -> f64 {
    q.as_ref().map_or(f64::NAN, |q| rational::to_f64(&q.0))
}

/// Numerator and denominator when both fit in 64 bits.
///
/// # Safety
/// `q` must be a live rational handle; `num` and `den` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symhyp_rational_parts(
    q: *const SymhypRational,
    num: *mut i64,
    den: *mut i64,
) -> SymhypStatus {
    guard(|| {
        let q = &deref(q, "q")?.0;
        let too_big = || Error::Unsupported("numerator or denominator exceeds 64 bits".into());
        let n = q.numer().to_i64().ok_or_else(too_big)?;
        let d = q.denom().to_i64().ok_or_else(too_big)?;
        write(num, "num", n)?;
        write(den, "den", d)
    })
}

/// # Safety
/// `q` must be NULL or a live rational handle, which becomes invalid.
#[no_mangle]
pub unsafe extern "C" fn symhyp_rational_free(q: *mut SymhypRational) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

// Curvature constants

/// `C_p((B^n)^m)` from the closed form, normalized to `C_{nm} = 1`.
/// Requires `n >= 5`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symhyp_closed_form_cp(
    n: u32,
    m: u32,
    p: u32,
    out: *mut *mut SymhypRational,
) -> SymhypStatus {
    guard(|| write_rational(out, curvature::closed_form_cp(n, m, p)?.value))
}

/// `C_p((B^n)^m)` by exact minimization over the canonical shapes,
/// normalized to `C_{nm} = 1`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symhyp_minimized_cp(
    n: u32,
    m: u32,
    p: u32,
    out: *mut *mut SymhypRational,
) -> SymhypStatus {
    guard(|| write_rational(out, curvature::min_f(n, m, p)?.value.normalized().value))
}

/// `C_p((B^n)^m)` by enumerating every admissible shape; fails with
/// `SYMHYP_STATUS_RESOURCE` when more than `budget` subsets are needed.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symhyp_brute_force_cp(
    n: u32,
    m: u32,
    p: u32,
    budget: u64,
    out: *mut *mut SymhypRational,
) -> SymhypStatus {
    guard(|| write_rational(out, curvature::brute_force_cp(n, m, p, budget)?.value))
}

// Permutation actions

/// Sum of all exponents of a permutation with cycle lengths `parts`
/// acting on `(C^n)^m`, `m` the sum of the parts.
///
/// # Safety
/// `parts` must point to `len` integers; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symhyp_sigma_sum(
    parts: *const u32,
    len: usize,
    n: u32,
    out: *mut u64,
) -> SymhypStatus {
    guard(|| {
        let parts = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(deref(parts, "parts")?, len)
        };
        let ct = CycleType::new(parts.to_vec())?;
        write(out, "out", perm_rep::sigma_sum(&ct, n)?)
    })
}

/// `n(m-1) + 2 - alpha (n-2)(m-2)/2`.
///
/// # Safety
/// `alpha` must be a live rational handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symhyp_lemcrit_threshold(
    n: u32,
    m: u32,
    alpha: *const SymhypRational,
    out: *mut *mut SymhypRational,
) -> SymhypStatus {
    guard(|| {
        let alpha = &deref(alpha, "alpha")?.0;
        write_rational(out, perm_rep::lemcrit_threshold(n, m, alpha)?)
    })
}

/// Checks `a_{i_1} + ... + a_{i_d} >= r (1 - alpha)` for every
/// non-identity element of `S_m` acting on `(C^n)^m`.
///
/// # Safety
/// `alpha` must be a live rational handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symhyp_check_condition(
    m: u32,
    n: u32,
    d: u32,
    alpha: *const SymhypRational,
    out: *mut *mut SymhypConditionReport,
) -> SymhypStatus {
    guard(|| {
        let alpha = deref(alpha, "alpha")?.0.clone();
        let report = perm_rep::check_condition(m, n, &ConditionParams::new(d, alpha)?)?;
        write(
            out,
            "out",
            Box::into_raw(Box::new(SymhypConditionReport(report))),
        )
    })
}

/// # Safety
/// `report` must be a live condition report.
#[no_mangle]
pub unsafe extern "C" fn symhyp_condition_holds(report: *const SymhypConditionReport) -> bool {
    report.as_ref().is_some_and(|r| r.0.holds)
}

/// Cycle type of the witness, e.g. `"(2,1)"`, or NULL when the condition
/// holds. Free with `symhyp_string_free`.
///
/// # Safety
/// `report` must be a live condition report.
#[no_mangle]
pub unsafe extern "C" fn symhyp_condition_witness(
    report: *const SymhypConditionReport,
) -> *mut c_char {
    match report.as_ref().and_then(|r| r.0.witness.as_ref()) {
        Some(w) => into_c_string(w.cycle_type.to_string()),
        None => ptr::null_mut(),
    }
}

/// Smallest sum of `d` exponents of the witness; fails with
/// `SYMHYP_STATUS_DOMAIN` when the condition holds.
///
/// # Safety
/// `report` must be a live condition report; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symhyp_condition_min_sum(
    report: *const SymhypConditionReport,
    out: *mut u64,
) -> SymhypStatus {
    guard(|| {
        let report = &deref(report, "report")?.0;
        let w = report
            .witness
            .as_ref()
            .ok_or_else(|| Error::Domain("the condition holds, no witness".into()))?;
        write(out, "out", w.min_sum)
    })
}

/// # Safety
/// `report` must be NULL or a live condition report, which becomes invalid.
#[no_mangle]
pub unsafe extern "C" fn symhyp_condition_report_free(report: *mut SymhypConditionReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

// Bounds

unsafe fn write_bound(
    out: *mut *mut SymhypBoundReport,
    report: BoundReport,
) -> Result<(), Failure> {
    write(
        out,
        "out",
        Box::into_raw(Box::new(SymhypBoundReport(report))),
    )
}

/// `(2n-1)^5 (2m^2 + 10n - 1)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symhyp_bound_kobayashi(
    n: u64,
    m: u64,
    out: *mut *mut SymhypBoundReport,
) -> SymhypStatus {
    guard(|| write_bound(out, bounds::kobayashi_sym_bound(n, m)?))
}

/// `16 n^5 (5n + 2m^2 + 4)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symhyp_bound_bk19(
    n: u64,
    m: u64,
    out: *mut *mut SymhypBoundReport,
) -> SymhypStatus {
    guard(|| write_bound(out, bounds::bk19_bound(n, m)?))
}

/// `(n + n')^((n + n')^2) 2m(m-1)` for `n' >= n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symhyp_bound_debarre(
    n: u64,
    nprime: u64,
    m: u64,
    out: *mut *mut SymhypBoundReport,
) -> SymhypStatus {
    guard(|| write_bound(out, bounds::debarre_ci_bound(n, nprime, m)?))
}

/// Criterion `d/r > 2m(m-1)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symhyp_bound_hypcrit(
    d: u64,
    r: u64,
    m: u64,
    out: *mut *mut SymhypBoundReport,
) -> SymhypStatus {
    guard(|| write_bound(out, bounds::hyp_criterion_margin(d, r, m)?))
}

/// Dimension threshold `(m-1)n + 2`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symhyp_bound_subvariety(
    n: u64,
    m: u64,
    out: *mut *mut SymhypBoundReport,
) -> SymhypStatus {
    guard(|| write_bound(out, bounds::subvariety_gt_threshold(n, m)?))
}

/// Degree threshold `n(m-1) + 6` for ball quotients.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symhyp_bound_ball_quotient(
    n: u64,
    m: u64,
    out: *mut *mut SymhypBoundReport,
) -> SymhypStatus {
    guard(|| write_bound(out, bounds::ball_quotient_thresholds(n, m)?))
}

/// Criterion `gamma delta > 2m(m-1)`.
///
/// # Safety
/// `gamma` and `delta` must be live rational handles; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn symhyp_bound_compact_quotient(
    gamma: *const SymhypRational,
    delta: *const SymhypRational,
    m: u64,
    out: *mut *mut SymhypBoundReport,
) -> SymhypStatus {
    guard(|| {
        let gamma = &deref(gamma, "gamma")?.0;
        let delta = &deref(delta, "delta")?.0;
        write_bound(out, bounds::compact_quotient_check(gamma, delta, m)?)
    })
}

/// Orbifold multiplicity of a fiber given as `"t:m,t:m,..."`, e.g.
/// `"2:3,1:inf"`.
///
/// # Safety
/// `fiber` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symhyp_bound_orbifold(
    fiber: *const c_char,
    out: *mut *mut SymhypBoundReport,
) -> SymhypStatus {
    guard(|| {
        let fiber = CStr::from_ptr(deref(fiber, "fiber")?)
            .to_str()
            .map_err(|_| Error::Parse("fiber is not UTF-8".into()))?;
        write_bound(out, bounds::orbifold_report(&fiber.parse()?))
    })
}

/// Exact value as text: an integer, `"p/q"`, `"inf"` or a verdict. Free with
/// `symhyp_string_free`.
///
/// # Safety
/// `report` must be NULL or a live bound report.
#[no_mangle]
pub unsafe extern "C" fn symhyp_bound_value(report: *const SymhypBoundReport) -> *mut c_char {
    match report.as_ref() {
        Some(r) => into_c_string(match &r.0.value {
            Value::Integer(v) => v.to_string(),
            Value::Rational(q) => rational::exact(q),
            Value::Infinite => "inf".into(),
            Value::Verdict(v) => v.to_string(),
        }),
        None => ptr::null_mut(),
    }
}

/// 1 if the criterion holds, 0 if not, -1 for plain bounds.
///
/// # Safety
/// `report` must be a live bound report.
#[no_mangle]
pub unsafe extern "C" fn symhyp_bound_satisfied(report: *const SymhypBoundReport) -> i32 {
    match report.as_ref().and_then(|r| r.0.satisfied) {
        Some(true) => 1,
        Some(false) => 0,
        None => -1,
    }
}

/// Margin of a strict criterion; `SYMHYP_STATUS_UNSUPPORTED` for bounds
/// without one.
///
/// # Safety
/// `report` must be a live bound report; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symhyp_bound_margin(
    report: *const SymhypBoundReport,
    out: *mut *mut SymhypRational,
) -> SymhypStatus {
    guard(|| {
        let report = &deref(report, "report")?.0;
        let margin = report
            .margin
            .clone()
            .ok_or_else(|| Error::Unsupported(format!("{} has no margin", report.name)))?;
        write_rational(out, margin)
    })
}

/// # Safety
/// `report` must be NULL or a live bound report, which becomes invalid.
#[no_mangle]
pub unsafe extern "C" fn symhyp_bound_report_free(report: *mut SymhypBoundReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    unsafe fn text(s: *mut c_char) -> String {
        assert!(!s.is_null());
        let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
        symhyp_string_free(s);
        out
    }

    #[test]
    fn closed_form_through_handle() {
        unsafe {
            let mut q = ptr::null_mut();
            assert_eq!(symhyp_closed_form_cp(5, 2, 2, &mut q), SymhypStatus::Ok);
            assert_eq!(text(symhyp_rational_to_string(q)), "23/96");
            let (mut num, mut den) = (0, 0);
            assert_eq!(
                symhyp_rational_parts(q, &mut num, &mut den),
                SymhypStatus::Ok
            );
            assert_eq!((num, den), (23, 96));
            symhyp_rational_free(q);
            assert!(symhyp_last_error().is_null());
        }
    }

    #[test]
    fn errors_set_status_and_message() {
        unsafe {
            let mut q = ptr::null_mut();
            assert_eq!(
                symhyp_closed_form_cp(4, 2, 2, &mut q),
                SymhypStatus::Unsupported
            );
            assert!(q.is_null());
            assert!(text(symhyp_last_error()).contains("closed form unavailable"));
            assert_eq!(symhyp_closed_form_cp(5, 2, 0, &mut q), SymhypStatus::Domain);
            assert_eq!(
                symhyp_closed_form_cp(5, 2, 1, ptr::null_mut()),
                SymhypStatus::NullPointer
            );
            assert_eq!(
                symhyp_brute_force_cp(5, 6, 15, 10, &mut q),
                SymhypStatus::Resource
            );
            assert_eq!(
                symhyp_rational_parse(c"x/y".as_ptr(), &mut q),
                SymhypStatus::Parse
            );
        }
    }

    #[test]
    fn condition_witness() {
        unsafe {
            let alpha = symhyp_rational_new(0, 1);
            let mut report = ptr::null_mut();
            assert_eq!(
                symhyp_check_condition(2, 2, 3, alpha, &mut report),
                SymhypStatus::Ok
            );
            assert!(!symhyp_condition_holds(report));
            assert_eq!(text(symhyp_condition_witness(report)), "(2)");
            let mut sum = 99;
            assert_eq!(symhyp_condition_min_sum(report, &mut sum), SymhypStatus::Ok);
            assert_eq!(sum, 1);
            symhyp_condition_report_free(report);
            symhyp_rational_free(alpha);
        }
    }
}

//! C ABI over `tamagawa-core`.
//!
//! Conventions:
//! - Every fallible function returns a [`TmgStatus`] and writes its result
//!   through an out-pointer. Out-pointers are left untouched on failure.
//! - Handles ([`TmgGroup`], [`TmgCurve`]) are opaque, created by `*_new` /
//!   `*_parse` and released by the matching `*_free`. Passing NULL to a free
//!   function is a no-op.
//! - Big integers and rationals are returned as NUL-terminated decimal
//!   strings (`"n"` or `"n/d"`) owned by the caller and released with
//!   [`tmg_string_free`].
//! - After a non-OK status, [`tmg_last_error`] describes the failure on the
//!   calling thread.
//!
//! The header `include/tamagawa.h` is generated from this file by cbindgen.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tamagawa_core::bung::{series_identity_check, tamagawa_rhs, trace_total, BunGContext};
use tamagawa_core::cli::{render_json, verification_report, Command, RunConfig};
use tamagawa_core::rootsys::{CartanLabel, GroupInvariants};
use tamagawa_core::zeta::{CurveSpec, CurveZeta};
use tamagawa_core::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TmgStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// A label or curve description could not be parsed.
    ParseError = 3,
    /// Well-formed input outside the mathematical domain (not a prime
    /// power, inadmissible label, bad Weil numerator, ...).
    InvalidArgument = 4,
    /// Valid input beyond what the library computes (size budgets, ...).
    Unsupported = 5,
    /// The computation ran and the identity did not hold.
    VerificationFailed = 6,
    /// The buffer supplied by the caller is too small.
    BufferTooSmall = 7,
    /// Internal error; the library caught a panic.
    Panic = 8,
}

/// Root-system invariants of a split simply connected group.
pub struct TmgGroup {
    label: CartanLabel,
    inv: GroupInvariants,
}

/// Zeta function of a smooth projective curve over a finite field.
pub struct TmgCurve {
    spec: CurveSpec,
    zeta: CurveZeta,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> TmgStatus {
    match err {
        Error::Parse { .. } => TmgStatus::ParseError,
        Error::Unsupported(_) => TmgStatus::Unsupported,
        _ => TmgStatus::InvalidArgument,
    }
}

struct Failure(TmgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(TmgStatus::NullPointer, format!("{what} is NULL"))
}

/// Runs `f`, converting errors and panics into a status plus last-error text.
fn guard(f: impl FnOnce() -> Result<TmgStatus, Failure>) -> TmgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => {
            if status == TmgStatus::Ok {
                set_last_error("");
            }
            status
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal error (panic)");
            TmgStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(TmgStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<TmgStatus, Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(TmgStatus::Ok)
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<TmgStatus, Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|_| Failure(TmgStatus::Panic, "interior NUL".into()))?;
    out.write(c.into_raw());
    Ok(TmgStatus::Ok)
}

fn optional_q(q: u64) -> Option<u64> {
    (q != 0).then_some(q)
}

/// Message for the most recent failure on this thread ("" after a success).
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn tmg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tmg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn tmg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the invariants for a Cartan label such as `"A1"` or `"E8"`.
///
/// # Safety
/// `label` must be NULL or a NUL-terminated string; `out` must be NULL or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn tmg_group_new(label: *const c_char, out: *mut *mut TmgGroup) -> TmgStatus {
    guard(|| {
        let label: CartanLabel = read_str(label, "label")?.parse()?;
        let group = Box::new(TmgGroup {
            label,
            inv: GroupInvariants::for_label(label),
        });
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(Box::into_raw(group));
        Ok(TmgStatus::Ok)
    })
}

/// # Safety
/// `group` must be NULL or a live handle from [`tmg_group_new`].
#[no_mangle]
pub unsafe extern "C" fn tmg_group_free(group: *mut TmgGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// # Safety
/// `group` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmg_group_rank(group: *const TmgGroup, out: *mut u32) -> TmgStatus {
    guard(|| write(out, deref(group, "group")?.inv.rank, "out"))
}

/// `dim G = rank + 2 N`.
///
/// # Safety
/// `group` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmg_group_dimension(group: *const TmgGroup, out: *mut u64) -> TmgStatus {
    guard(|| write(out, deref(group, "group")?.inv.dim_g, "out"))
}

/// # Safety
/// `group` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmg_group_num_positive_roots(
    group: *const TmgGroup,
    out: *mut u64,
) -> TmgStatus {
    guard(|| write(out, deref(group, "group")?.inv.num_pos_roots, "out"))
}

/// Copies the fundamental degrees (ascending) into `buf`. `*len` receives
/// the number of degrees, which equals the rank; if `cap` is smaller the
/// call returns `BUFFER_TOO_SMALL` and writes only `*len`.
///
/// # Safety
/// `group` must be a live handle, `len` writable, and `buf` valid for `cap`
/// writes (it may be NULL when `cap` is 0).
#[no_mangle]
pub unsafe extern "C" fn tmg_group_degrees(
    group: *const TmgGroup,
    buf: *mut u32,
    cap: usize,
    len: *mut usize,
) -> TmgStatus {
    guard(|| {
        let degrees = &deref(group, "group")?.inv.degrees;
        write(len, degrees.len(), "len")?;
        if cap < degrees.len() {
            return Err(Failure(
                TmgStatus::BufferTooSmall,
                format!("need room for {} degrees, got {cap}", degrees.len()),
            ));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(degrees.as_ptr(), buf, degrees.len());
        Ok(TmgStatus::Ok)
    })
}

/// Order of the Weyl group as a decimal string.
///
/// # Safety
/// `group` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmg_group_weyl_order(
    group: *const TmgGroup,
    out: *mut *mut c_char,
) -> TmgStatus {
    guard(|| write_string(out, deref(group, "group")?.inv.weyl_order.to_string()))
}

/// `|G(F_q)|` as a decimal string; `q` must be a prime power.
///
/// # Safety
/// `group` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmg_group_chevalley_order(
    group: *const TmgGroup,
    q: u64,
    out: *mut *mut c_char,
) -> TmgStatus {
    guard(|| {
        let order = deref(group, "group")?.inv.chevalley_order(q)?;
        write_string(out, order.to_string())
    })
}

/// Parses a curve description (`"p1"`, `"weil:q=2,g=1,num=1,0,2"`,
/// `"elliptic:p=5,a=[0,0,0,1,0]"`). `q` is the field size; pass 0 to take it
/// from the description (required for `p1`).
///
/// # Safety
/// `spec` must be NULL or a NUL-terminated string; `out` must be NULL or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn tmg_curve_parse(
    spec: *const c_char,
    q: u64,
    out: *mut *mut TmgCurve,
) -> TmgStatus {
    guard(|| {
        let spec: CurveSpec = read_str(spec, "spec")?.parse()?;
        let zeta = spec.resolve(optional_q(q))?;
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(Box::into_raw(Box::new(TmgCurve { spec, zeta })));
        Ok(TmgStatus::Ok)
    })
}

/// # Safety
/// `curve` must be NULL or a live handle from [`tmg_curve_parse`].
#[no_mangle]
pub unsafe extern "C" fn tmg_curve_free(curve: *mut TmgCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmg_curve_field_size(curve: *const TmgCurve, out: *mut u64) -> TmgStatus {
    guard(|| write(out, deref(curve, "curve")?.zeta.q(), "out"))
}

/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmg_curve_genus(curve: *const TmgCurve, out: *mut u32) -> TmgStatus {
    guard(|| write(out, deref(curve, "curve")?.zeta.genus(), "out"))
}

/// `N_r = |X(F_{q^r})|` as a decimal string, `r >= 1`.
///
/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmg_curve_point_count(
    curve: *const TmgCurve,
    r: u32,
    out: *mut *mut c_char,
) -> TmgStatus {
    guard(|| {
        let curve = deref(curve, "curve")?;
        if r == 0 {
            return Err(Error::Domain("r must be at least 1".into()).into());
        }
        write_string(out, curve.zeta.point_count(r).to_string())
    })
}

unsafe fn context(group: *const TmgGroup, curve: *const TmgCurve) -> Result<BunGContext, Failure> {
    let group = deref(group, "group")?;
    let curve = deref(curve, "curve")?;
    Ok(BunGContext::new(group.inv.clone(), curve.zeta.clone())?)
}

/// Total Frobenius trace on the cohomology of `Bun_G`, as `"n/d"`.
///
/// # Safety
/// `group` and `curve` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmg_trace_total(
    group: *const TmgGroup,
    curve: *const TmgCurve,
    out: *mut *mut c_char,
) -> TmgStatus {
    guard(|| write_string(out, trace_total(&context(group, curve)?).to_string()))
}

/// `q^{(g-1) dim G} * prod_i zeta_X(d_i)`, as `"n/d"`.
///
/// # Safety
/// `group` and `curve` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmg_tamagawa_rhs(
    group: *const TmgGroup,
    curve: *const TmgCurve,
    out: *mut *mut c_char,
) -> TmgStatus {
    guard(|| write_string(out, tamagawa_rhs(&context(group, curve)?).to_string()))
}

/// Compares the global and local generating series through `t^order`.
/// Writes 1 to `identical` when every coefficient agrees, 0 otherwise; the
/// status is `OK` in both cases.
///
/// # Safety
/// `group` and `curve` must be live handles; `identical` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmg_series_identity(
    group: *const TmgGroup,
    curve: *const TmgCurve,
    order: usize,
    identical: *mut u8,
) -> TmgStatus {
    guard(|| {
        let ctx = context(group, curve)?;
        if order > tamagawa_core::cli::MAX_ORDER {
            return Err(Error::Domain(format!(
                "order {order} exceeds the maximum {}",
                tamagawa_core::cli::MAX_ORDER
            ))
            .into());
        }
        write(
            identical,
            series_identity_check(&ctx, order).identical as u8,
            "identical",
        )
    })
}

/// Full verification with default settings, rendered as the same JSON
/// document `tamagawa verify-tamagawa --format json` prints. `q` may be 0
/// when the curve description fixes the field. Returns `OK` when every check
/// passed and `VERIFICATION_FAILED` when one did not; the JSON is written in
/// both cases.
///
/// # Safety
/// `group` and `curve` must be NULL or NUL-terminated strings; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn tmg_verify_tamagawa_json(
    group: *const c_char,
    curve: *const c_char,
    q: u64,
    out: *mut *mut c_char,
) -> TmgStatus {
    guard(|| {
        let mut config = RunConfig::new(Command::VerifyTamagawa);
        config.group = Some(read_str(group, "group")?.to_owned());
        config.curve = Some(read_str(curve, "curve")?.to_owned());
        config.q = optional_q(q);
        let report = verification_report(&config)?;
        write_string(out, render_json(&report))?;
        if report.verified {
            Ok(TmgStatus::Ok)
        } else {
            set_last_error("verification failed");
            Ok(TmgStatus::VerificationFailed)
        }
    })
}

/// Canonical text of a curve handle's description (`"p1"`, ...).
///
/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmg_curve_description(
    curve: *const TmgCurve,
    out: *mut *mut c_char,
) -> TmgStatus {
    guard(|| write_string(out, deref(curve, "curve")?.spec.to_string()))
}

/// Canonical Cartan label of a group handle (`"A1"`, ...).
///
/// # Safety
/// `group` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmg_group_label(
    group: *const TmgGroup,
    out: *mut *mut c_char,
) -> TmgStatus {
    guard(|| write_string(out, deref(group, "group")?.label.to_string()))
}

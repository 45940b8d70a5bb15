//! C ABI for duality-kit.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `*_free`. Every fallible call returns a [`DkStatus`];
//! on anything but `DK_STATUS_OK` the message is available from
//! [`dk_last_error`] on the same thread. Strings handed out by the library
//! are released with [`dk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use duality_kit::cli::{self, Failure};
use duality_kit::exact::to_f64;
use duality_kit::fin_cstar::{self, Tolerance};
use duality_kit::fin_meas::{self, FinMeasSpace};
use duality_kit::fin_stoch::{self, Kernel};
use duality_kit::law_harness::DEFAULT_BUDGET;
use duality_kit::schema::{self, cmat_to_json, Document, Kind};
use duality_kit::Error;
use serde_json::Value;

/// Result of a call. Values match the command-line exit codes where they
/// overlap.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DkStatus {
    Ok = 0,
    /// A law check failed; the report is still written.
    LawFailure = 1,
    InvalidInput = 2,
    Internal = 3,
    NullArgument = 4,
    Panic = 5,
}

/// A finite measurable space.
pub struct DkSpace(FinMeasSpace);

/// A Markov kernel between finite measurable spaces.
pub struct DkKernel(Kernel);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(DkStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::from(Failure::from(e))
    }
}

impl From<Failure> for Fail {
    fn from(f: Failure) -> Self {
        let status = if f.code() == 2 { DkStatus::InvalidInput } else { DkStatus::Internal };
        Fail(status, f.message().to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<DkStatus, Fail>) -> DkStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            DkStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(DkStatus::NullArgument, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(DkStatus::InvalidInput, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

fn check_out<T>(out: *mut T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        Err(null(what))
    } else {
        Ok(())
    }
}

fn to_c(v: &Value) -> Result<*mut c_char, Fail> {
    let s = serde_json::to_string(v).map_err(|e| Fail(DkStatus::Internal, e.to_string()))?;
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|e| Fail(DkStatus::Internal, e.to_string()))
}

fn parse<T>(json: &str, kind: Kind, read: impl Fn(&Document, &Value, &str) -> duality_kit::Result<T>) -> Result<T, Fail> {
    let doc = Document::parse_str("input", json)?;
    let (loc, v) = doc.record(kind, None)?;
    Ok(read(&doc, v, &loc)?)
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into the library.
#[no_mangle]
pub extern "C" fn dk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn dk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a space record (`{"points": [...], "blocks": [[...]]}`).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_space_from_json(json: *const c_char, out: *mut *mut DkSpace) -> DkStatus {
    guard(|| {
        check_out(out, "out")?;
        let x = parse(text(json, "json")?, Kind::Space, Document::space)?;
        *out = Box::into_raw(Box::new(DkSpace(x)));
        Ok(DkStatus::Ok)
    })
}

/// # Safety
/// `x` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn dk_space_free(x: *mut DkSpace) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// # Safety
/// `x` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dk_space_n_points(x: *const DkSpace) -> usize {
    x.as_ref().map_or(0, |x| x.0.n_points())
}

/// # Safety
/// `x` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dk_space_n_blocks(x: *const DkSpace) -> usize {
    x.as_ref().map_or(0, |x| x.0.n_blocks())
}

/// # Safety
/// `x` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dk_space_is_sober(x: *const DkSpace) -> bool {
    x.as_ref().is_some_and(|x| x.0.is_sober())
}

/// # Safety
/// `x` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_space_to_json(x: *const DkSpace, out: *mut *mut c_char) -> DkStatus {
    guard(|| {
        check_out(out, "out")?;
        let x = handle(x, "space")?;
        *out = to_c(&serde_json::to_value(&x.0).map_err(|e| Fail(DkStatus::Internal, e.to_string()))?)?;
        Ok(DkStatus::Ok)
    })
}

/// The sober quotient of `x`. When `unit` is non-null it receives the
/// point map of the unit `x -> sob(x)`, one entry per point of `x`.
///
/// # Safety
/// `x` must be a live handle; `out` writable; `unit` null or room for
/// `dk_space_n_points(x)` entries.
#[no_mangle]
pub unsafe extern "C" fn dk_sobrify(x: *const DkSpace, out: *mut *mut DkSpace, unit: *mut usize) -> DkStatus {
    guard(|| {
        check_out(out, "out")?;
        let x = handle(x, "space")?;
        let s = fin_meas::sobrify(&x.0);
        if !unit.is_null() {
            for (i, &p) in s.unit.point_fn().iter().enumerate() {
                *unit.add(i) = p;
            }
        }
        *out = Box::into_raw(Box::new(DkSpace(s.space)));
        Ok(DkStatus::Ok)
    })
}

/// Parses a kernel record (`{"rows": [["1/2", "1/2"], ...]}` with optional
/// `source` and `target` spaces).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_kernel_from_json(json: *const c_char, out: *mut *mut DkKernel) -> DkStatus {
    guard(|| {
        check_out(out, "out")?;
        let k = parse(text(json, "json")?, Kind::Kernel, Document::kernel)?;
        *out = Box::into_raw(Box::new(DkKernel(k)));
        Ok(DkStatus::Ok)
    })
}

/// # Safety
/// `k` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn dk_kernel_free(k: *mut DkKernel) {
    if !k.is_null() {
        drop(Box::from_raw(k));
    }
}

/// First `a`, then `b`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_kernel_compose(a: *const DkKernel, b: *const DkKernel, out: *mut *mut DkKernel) -> DkStatus {
    guard(|| {
        check_out(out, "out")?;
        let k = fin_stoch::compose(&handle(a, "a")?.0, &handle(b, "b")?.0)?;
        *out = Box::into_raw(Box::new(DkKernel(k)));
        Ok(DkStatus::Ok)
    })
}

/// Probability of target block `block` from source point `point`, rounded
/// to a double.
///
/// # Safety
/// `k` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_kernel_prob(k: *const DkKernel, point: usize, block: usize, out: *mut f64) -> DkStatus {
    guard(|| {
        check_out(out, "out")?;
        let k = &handle(k, "kernel")?.0;
        if point >= k.source().n_points() || block >= k.target().n_blocks() {
            return Err(Fail(DkStatus::InvalidInput, format!("index ({point}, {block}) out of range")));
        }
        *out = to_f64(k.prob(point, block));
        Ok(DkStatus::Ok)
    })
}

/// Exact JSON form of `k`; probabilities are `"p/q"` strings.
///
/// # Safety
/// `k` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_kernel_to_json(k: *const DkKernel, out: *mut *mut c_char) -> DkStatus {
    guard(|| {
        check_out(out, "out")?;
        let k = handle(k, "kernel")?;
        *out = to_c(&serde_json::to_value(&k.0).map_err(|e| Fail(DkStatus::Internal, e.to_string()))?)?;
        Ok(DkStatus::Ok)
    })
}

/// `f(a)` for a normal matrix given as JSON and a function spec such as
/// `"indicator:0.5,1.5"`. The result is a JSON matrix of `[re, im]` pairs.
/// A non-positive `tol` selects the default spectral tolerance. Non-normal
/// input is `DK_STATUS_INVALID_INPUT`.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_funcalc(matrix_json: *const c_char, fn_spec: *const c_char, tol: f64, out: *mut *mut c_char) -> DkStatus {
    guard(|| {
        check_out(out, "out")?;
        let a = parse(text(matrix_json, "matrix_json")?, Kind::Matrix, Document::cmatrix)?;
        let f = schema::parse_fnspec_str(text(fn_spec, "fn_spec")?)?;
        let tol = if tol > 0.0 { Tolerance::with_spectral(tol) } else { Tolerance::default() };
        if !a.is_square() || !fin_cstar::spectral::is_normal(&a, &tol) {
            return Err(Fail(DkStatus::InvalidInput, "matrix is not normal".into()));
        }
        let r = fin_cstar::funcalc(&a, &f, &tol)?;
        *out = to_c(&cmat_to_json(&r))?;
        Ok(DkStatus::Ok)
    })
}

/// Runs a suite group (`bool`, `meas`, `stoch`, `cstar`, `dualities`,
/// `all`) and writes the certificate report. Returns `DK_STATUS_LAW_FAILURE`
/// when a law fails, with the report still written. `budget` 0 selects the
/// default.
///
/// # Safety
/// `group` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_verify(group: *const c_char, seed: u64, cases: usize, budget: u64, out: *mut *mut c_char) -> DkStatus {
    guard(|| {
        check_out(out, "out")?;
        let budget = if budget == 0 { DEFAULT_BUDGET } else { u128::from(budget) };
        let run = cli::verify(text(group, "group")?, seed, cases, budget, Tolerance::default())?;
        *out = to_c(&run.report)?;
        Ok(if run.passed { DkStatus::Ok } else { DkStatus::LawFailure })
    })
}

//! C interface to the normal form engine.
//!
//! Systems are opaque handles created by `hnf_system_parse` or
//! `hnf_system_preset` and released with `hnf_system_free`. Every call
//! returns an `HnfStatus`; on failure `hnf_last_error` gives the message for
//! the calling thread. Strings returned through out-parameters are owned by
//! the caller and released with `hnf_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hamnf::catalog::{preset_system, CaseId};
use hamnf::cli::{render_report, run, Format, JobConfig, Mode};
use hamnf::normalizer::{HamiltonianSystem, PairPolicy};
use hamnf::parse::parse_system;
use hamnf::Error;

/// Opaque handle to a validated system.
pub struct HnfSystem {
    inner: HamiltonianSystem,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HnfStatus {
    Ok = 0,
    Validation = 1,
    Parse = 2,
    Internal = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HnfMode {
    Resonance = 0,
    Gphnf = 1,
    Gnf = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HnfFormat {
    Text = 0,
    Records = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HnfPolicy {
    ZeroFirst = 0,
    ZeroSecond = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: HnfStatus, msg: impl Into<String>) -> HnfStatus {
    set_error(msg);
    status
}

fn from_error(e: &Error) -> HnfStatus {
    let status = match e.exit_code() {
        2 => HnfStatus::Parse,
        3 => HnfStatus::Internal,
        _ => HnfStatus::Validation,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> HnfStatus) -> HnfStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(HnfStatus::Internal, "panic inside the engine"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, HnfStatus> {
    if s.is_null() {
        return Err(fail(HnfStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(HnfStatus::InvalidUtf8, "string argument is not valid UTF-8"))
}

unsafe fn store_system(out: *mut *mut HnfSystem, sys: HamiltonianSystem) {
    *out = Box::into_raw(Box::new(HnfSystem { inner: sys }));
}

/// Parses a system document. On success `*out` receives a new handle.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hnf_system_parse(text: *const c_char, out: *mut *mut HnfSystem) -> HnfStatus {
    guard(|| {
        if out.is_null() {
            return fail(HnfStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_system(text) {
            Ok(sys) => {
                store_system(out, sys);
                HnfStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Builds a catalog system (`takens:M`, `lm:L,M`, `diag:M`, `binom:L,M[,SIGN]`)
/// with a dense random perturbation up to `truncation`.
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hnf_system_preset(
    name: *const c_char,
    truncation: u32,
    seed: u64,
    out: *mut *mut HnfSystem,
) -> HnfStatus {
    guard(|| {
        if out.is_null() {
            return fail(HnfStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let name = match read_str(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match name.parse::<CaseId>().and_then(|c| preset_system(c, truncation, seed)) {
            Ok(sys) => {
                store_system(out, sys);
                HnfStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Truncation degree of a system, or 0 for a null handle.
///
/// # Safety
/// `sys` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hnf_system_truncation(sys: *const HnfSystem) -> u32 {
    sys.as_ref().map_or(0, |s| s.inner.truncation())
}

/// Generalized order of the unperturbed field, or 0 for a null handle.
///
/// # Safety
/// `sys` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hnf_system_chi(sys: *const HnfSystem) -> u32 {
    sys.as_ref().map_or(0, |s| s.inner.chi())
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `sys` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hnf_system_free(sys: *mut HnfSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Runs a computation and renders the report into `*out`.
///
/// # Safety
/// `sys` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hnf_run(
    sys: *const HnfSystem,
    mode: HnfMode,
    policy: HnfPolicy,
    format: HnfFormat,
    verify: bool,
    out: *mut *mut c_char,
) -> HnfStatus {
    guard(|| {
        if out.is_null() {
            return fail(HnfStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let Some(sys) = sys.as_ref() else {
            return fail(HnfStatus::NullPointer, "null system handle");
        };
        let cfg = JobConfig {
            mode: match mode {
                HnfMode::Resonance => Mode::Resonance,
                HnfMode::Gphnf => Mode::Gphnf,
                HnfMode::Gnf => Mode::Gnf,
            },
            policy: match policy {
                HnfPolicy::ZeroFirst => PairPolicy::ZeroFirst,
                HnfPolicy::ZeroSecond => PairPolicy::ZeroSecond,
            }
            .into(),
            format: match format {
                HnfFormat::Text => Format::Text,
                HnfFormat::Records => Format::Records,
            },
            verify,
            ..JobConfig::default()
        };
        match run(&cfg, &sys.inner) {
            Ok(report) => {
                let text = render_report(&cfg, &report);
                *out = CString::new(text).expect("reports contain no nul bytes").into_raw();
                HnfStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// Releases a string returned by `hnf_run`; null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hnf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hnf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

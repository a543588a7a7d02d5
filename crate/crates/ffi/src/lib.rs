//! C ABI over the valext library.
//!
//! Every entry point returns a [`ValextStatus`]; results come back through
//! out-pointers. Strings handed out are owned by the caller and released
//! with [`valext_string_free`]; certificates with [`valext_certificate_free`].
//! On a non-`Ok` status, [`valext_last_error_message`] describes the error
//! for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use valext::certlab::{build_piltant, Certificate, PiltantVariant};
use valext::cli::{self, CliError, RunOptions};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValextStatus {
    Ok = 0,
    /// A mathematical precondition does not hold.
    Domain = 1,
    /// Malformed JSON or an unknown field, task or schema version.
    Parse = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    /// The certificate was read but did not re-validate.
    RecheckFailed = 5,
    Panic = 6,
}

/// Opaque certificate handle.
pub struct ValextCertificate {
    inner: Certificate,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: ValextStatus, msg: impl Into<String>) -> ValextStatus {
    set_error(msg);
    status
}

fn cli_status(e: &CliError) -> ValextStatus {
    match e.exit_code() {
        cli::EXIT_DOMAIN => ValextStatus::Domain,
        _ => ValextStatus::Parse,
    }
}

fn guard(f: impl FnOnce() -> ValextStatus) -> ValextStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(ValextStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, ValextStatus> {
    if s.is_null() {
        return Err(fail(ValextStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(ValextStatus::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> ValextStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            ValextStatus::Ok
        }
        Err(_) => fail(ValextStatus::Panic, "output contains a NUL byte"),
    }
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next valext call on the same thread.
#[no_mangle]
pub extern "C" fn valext_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn valext_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs a job file given as JSON text and returns the JSON report (an
/// array for batches). The status is the worst over the jobs; the report
/// is written even when some job failed.
///
/// # Safety
/// `job_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn valext_run_job_json(job_json: *const c_char, out: *mut *mut c_char) -> ValextStatus {
    guard(|| {
        if out.is_null() {
            return fail(ValextStatus::NullPointer, "null out pointer");
        }
        let text = try_status!(read_str(job_json));
        let jobs = match cli::parse_jobs(text) {
            Ok(j) => j,
            Err(e) => return fail(cli_status(&e), e.to_string()),
        };
        let results = cli::run_batch(&jobs, &RunOptions::default());
        let mut status = ValextStatus::Ok;
        for r in &results {
            match &r.result {
                Err(e) if status == ValextStatus::Ok || cli_status(e) == ValextStatus::Parse => {
                    status = cli_status(e);
                    set_error(e.to_string());
                }
                Ok(o) if !o.passed && status == ValextStatus::Ok => {
                    status = ValextStatus::RecheckFailed;
                    set_error(o.text.clone());
                }
                _ => {}
            }
        }
        let mut reports: Vec<_> = results.iter().map(|r| r.json()).collect();
        let v = if reports.len() == 1 { reports.pop().unwrap() } else { serde_json::Value::Array(reports) };
        match write_string(out, cli::render_json(&v)) {
            ValextStatus::Ok => status,
            s => s,
        }
    })
}

/// Parses a certificate. Schema mismatches give `Parse`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn valext_certificate_from_json(json: *const c_char, out: *mut *mut ValextCertificate) -> ValextStatus {
    guard(|| {
        if out.is_null() {
            return fail(ValextStatus::NullPointer, "null out pointer");
        }
        let text = try_status!(read_str(json));
        match Certificate::from_str(text) {
            Ok(c) => {
                *out = Box::into_raw(Box::new(ValextCertificate { inner: c }));
                ValextStatus::Ok
            }
            Err(e) => {
                let e: CliError = e.into();
                let msg = e.to_string();
                fail(cli_status(&e), msg)
            }
        }
    })
}

/// Re-validates every witness. `Ok` with `*passed = true` on success;
/// `RecheckFailed` with `*passed = false` and the first broken invariant
/// as the error message otherwise.
///
/// # Safety
/// `cert` must be a live handle; `passed` must be writable or NULL.
#[no_mangle]
pub unsafe extern "C" fn valext_certificate_recheck(cert: *const ValextCertificate, passed: *mut bool) -> ValextStatus {
    guard(|| {
        let Some(cert) = cert.as_ref() else {
            return fail(ValextStatus::NullPointer, "null certificate");
        };
        let r = cert.inner.recheck();
        if !passed.is_null() {
            *passed = r.passed;
        }
        match r.failure {
            None => ValextStatus::Ok,
            Some(f) => fail(ValextStatus::RecheckFailed, f.to_string()),
        }
    })
}

/// Canonical JSON text of a certificate.
///
/// # Safety
/// `cert` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn valext_certificate_to_json(cert: *const ValextCertificate, out: *mut *mut c_char) -> ValextStatus {
    guard(|| {
        let Some(cert) = cert.as_ref() else {
            return fail(ValextStatus::NullPointer, "null certificate");
        };
        if out.is_null() {
            return fail(ValextStatus::NullPointer, "null out pointer");
        }
        write_string(out, cert.inner.to_canonical_string())
    })
}

/// # Safety
/// `cert` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn valext_certificate_free(cert: *mut ValextCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Builds the defect-tower certificate for the schedule `e[0..len]`.
///
/// # Safety
/// `e` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn valext_piltant_build(p: u64, e: *const u64, len: usize, depth: usize, out: *mut *mut ValextCertificate) -> ValextStatus {
    guard(|| {
        if e.is_null() || out.is_null() {
            return fail(ValextStatus::NullPointer, "null argument");
        }
        let schedule = std::slice::from_raw_parts(e, len);
        match build_piltant(p, schedule, depth, &PiltantVariant::Classic) {
            Ok(c) => {
                *out = Box::into_raw(Box::new(ValextCertificate { inner: c }));
                ValextStatus::Ok
            }
            Err(err) => {
                let msg = err.to_string();
                fail(cli_status(&err.into()), msg)
            }
        }
    })
}

/// `v_{a,γ}(f)` for a descriptor and a rational function given as JSON;
/// the value comes back as JSON text (a "num/den" string in rank one).
///
/// # Safety
/// `vag_json` and `f_json` must be NUL-terminated strings; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn valext_eval_vag_json(vag_json: *const c_char, f_json: *const c_char, out: *mut *mut c_char) -> ValextStatus {
    guard(|| {
        if out.is_null() {
            return fail(ValextStatus::NullPointer, "null out pointer");
        }
        let vag = try_status!(read_str(vag_json));
        let f = try_status!(read_str(f_json));
        let job = format!(r#"{{"task":"eval","vag":{vag},"f":{f}}}"#);
        let jobs = match cli::parse_jobs(&job) {
            Ok(j) => j,
            Err(e) => return fail(ValextStatus::Parse, e.to_string()),
        };
        match cli::run_job(&jobs[0], &RunOptions::default()) {
            Ok(o) => write_string(out, o.report["value"].to_string()),
            Err(e) => fail(cli_status(&e), e.to_string()),
        }
    })
}

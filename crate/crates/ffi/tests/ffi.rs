use std::ffi::{CStr, CString};
use std::ptr;

use valext_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { valext_string_free(s) };
    out
}

fn last_error() -> String {
    let p = valext_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn piltant_handle_round_trip() {
    let e = [1u64, 2, 4, 7, 11];
    let mut cert = ptr::null_mut();
    assert_eq!(unsafe { valext_piltant_build(2, e.as_ptr(), e.len(), 4, &mut cert) }, ValextStatus::Ok);
    let mut passed = false;
    assert_eq!(unsafe { valext_certificate_recheck(cert, &mut passed) }, ValextStatus::Ok);
    assert!(passed);

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { valext_certificate_to_json(cert, &mut json) }, ValextStatus::Ok);
    let text = take(json);
    unsafe { valext_certificate_free(cert) };

    let c = CString::new(text.clone()).unwrap();
    let mut again = ptr::null_mut();
    assert_eq!(unsafe { valext_certificate_from_json(c.as_ptr(), &mut again) }, ValextStatus::Ok);
    let mut json2 = ptr::null_mut();
    assert_eq!(unsafe { valext_certificate_to_json(again, &mut json2) }, ValextStatus::Ok);
    assert_eq!(take(json2), text);
    unsafe { valext_certificate_free(again) };
}

#[test]
fn tampered_certificate_reports_level() {
    let e = [1u64, 2, 4, 7, 11];
    let mut cert = ptr::null_mut();
    unsafe { valext_piltant_build(3, e.as_ptr(), e.len(), 4, &mut cert) };
    let mut json = ptr::null_mut();
    unsafe { valext_certificate_to_json(cert, &mut json) };
    unsafe { valext_certificate_free(cert) };
    let mut v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
    v["body"]["schedule"][2] = serde_json::json!(5);
    let c = CString::new(v.to_string()).unwrap();
    let mut bad = ptr::null_mut();
    assert_eq!(unsafe { valext_certificate_from_json(c.as_ptr(), &mut bad) }, ValextStatus::Ok);
    let mut passed = true;
    assert_eq!(unsafe { valext_certificate_recheck(bad, &mut passed) }, ValextStatus::RecheckFailed);
    assert!(!passed);
    assert!(last_error().contains("level j="), "{}", last_error());
    unsafe { valext_certificate_free(bad) };
}

#[test]
fn schema_mismatch_is_parse_error() {
    let c = CString::new(r#"{"schema_version":99,"depth":1,"body":{"kind":"defect-tower"}}"#).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { valext_certificate_from_json(c.as_ptr(), &mut h) }, ValextStatus::Parse);
    assert!(h.is_null());
}

#[test]
fn run_job_statuses() {
    let job = CString::new(r#"{"task":"degree-bound","p":2,"n":[3,4],"depth":2}"#).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { valext_run_job_json(job.as_ptr(), &mut out) }, ValextStatus::Domain);
    let report: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(report["status"], "error");
    assert!(last_error().contains("n_i coprime to p violated at i=2"));

    let job = CString::new(r#"{"task":"bogus"}"#).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { valext_run_job_json(job.as_ptr(), &mut out) }, ValextStatus::Parse);
    assert!(out.is_null());

    let job = CString::new(r#"{"task":"degree-bound","p":2,"n":[3,5,7,11],"depth":4}"#).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { valext_run_job_json(job.as_ptr(), &mut out) }, ValextStatus::Ok);
    let cert: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(cert["body"]["bound"], 1155);
}

#[test]
fn eval_and_null_arguments() {
    let vag = CString::new(r#"{"kind":"vag","base":{"kind":"p-adic","p":3},"center":"0","gamma":"1/2"}"#).unwrap();
    let f = CString::new(r#"{"num":["9","0","1"]}"#).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { valext_eval_vag_json(vag.as_ptr(), f.as_ptr(), &mut out) }, ValextStatus::Ok);
    assert_eq!(take(out), "\"1\"");

    assert_eq!(unsafe { valext_eval_vag_json(ptr::null(), f.as_ptr(), &mut out) }, ValextStatus::NullPointer);
    assert_eq!(unsafe { valext_certificate_recheck(ptr::null(), ptr::null_mut()) }, ValextStatus::NullPointer);
    unsafe { valext_certificate_free(ptr::null_mut()) };
    unsafe { valext_string_free(ptr::null_mut()) };
}

#[test]
fn header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/valext.h");
    let text = std::fs::read_to_string(header).unwrap();
    for f in ["valext_run_job_json", "valext_certificate_recheck", "valext_piltant_build", "VALEXT_STATUS_RECHECK_FAILED"] {
        assert!(text.contains(f), "{f} missing from header");
    }
    let Ok(status) = std::process::Command::new("cc").args(["-fsyntax-only", "-x", "c", header]).status() else {
        return;
    };
    assert!(status.success());
}

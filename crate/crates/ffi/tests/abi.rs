use dirichlet_ffi::*;
use std::ffi::{CStr, CString};
use std::ptr;

fn frequency(json: &str) -> *mut DirFrequency {
    let json = CString::new(json).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { dir_frequency_from_json(json.as_ptr(), &mut h) }, DirStatus::Ok);
    assert!(!h.is_null());
    h
}

fn last_error() -> String {
    let p = dir_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn frequency_round_trip() {
    let h = frequency(r#"{"kind":"log_n"}"#);
    let mut buf = [0.0; 4];
    assert_eq!(unsafe { dir_frequency_materialize(h, 4, buf.as_mut_ptr()) }, DirStatus::Ok);
    for (i, v) in buf.iter().enumerate() {
        assert!((v - ((i + 1) as f64).ln()).abs() < 1e-15);
    }
    let (mut l, mut conf) = (0.0, DirVerdict::Inconclusive);
    assert_eq!(unsafe { dir_frequency_estimate_l(h, 10_000, 1_000, &mut l, &mut conf) }, DirStatus::Ok);
    assert_eq!(conf, DirVerdict::Holds);
    assert!((l - 1.0).abs() < 0.01, "{l}");

    let mut v = DirVerdict::Fails;
    assert_eq!(unsafe { dir_frequency_classify_bohr(h, &mut v) }, DirStatus::Ok);
    assert_eq!(v, DirVerdict::Holds);
    assert_eq!(unsafe { dir_gp_nuclearity(h, 4, 10_000, &mut v) }, DirStatus::Ok);
    assert_eq!(v, DirVerdict::Fails);

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { dir_frequency_report_json(h, &mut s) }, DirStatus::Ok);
    let report: serde_json::Value = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    assert!(report["records"].as_array().is_some_and(|r| r.len() == 5), "{report}");
    unsafe {
        dir_string_free(s);
        dir_frequency_free(h);
    }
}

#[test]
fn nuclear_for_linear_frequency() {
    let h = frequency(r#"{"kind":"n"}"#);
    let mut v = DirVerdict::Fails;
    assert_eq!(unsafe { dir_gp_nuclearity(h, 4, 10_000, &mut v) }, DirStatus::Ok);
    assert_eq!(v, DirVerdict::Holds);
    unsafe { dir_frequency_free(h) };
}

#[test]
fn error_codes() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { dir_frequency_from_json(ptr::null(), &mut h) }, DirStatus::NullPointer);
    assert!(last_error().contains("null"));

    let bad = CString::new("{\"kind\": ").unwrap();
    assert_eq!(unsafe { dir_frequency_from_json(bad.as_ptr(), &mut h) }, DirStatus::InvalidJson);
    assert!(last_error().contains("line 1"));

    let unknown = CString::new(r#"{"kind":"zeta"}"#).unwrap();
    assert_eq!(unsafe { dir_frequency_from_json(unknown.as_ptr(), &mut h) }, DirStatus::InvalidInput);

    let non_utf8 = [0xffu8, 0];
    assert_eq!(unsafe { dir_frequency_from_json(non_utf8.as_ptr().cast(), &mut h) }, DirStatus::InvalidUtf8);
    assert!(h.is_null());

    let f = frequency(r#"{"kind":"explicit","values":[0.0,1.0,2.0]}"#);
    let mut buf = [0.0; 5];
    assert_eq!(unsafe { dir_frequency_materialize(f, 5, buf.as_mut_ptr()) }, DirStatus::OutOfRange);
    unsafe { dir_frequency_free(f) };

    let mut out = 0.0;
    assert_eq!(unsafe { dir_kernel_eval(DirKernel::Fejer, -1.0, 0.0, &mut out) }, DirStatus::InvalidInput);
    assert_eq!(unsafe { dir_kernel_eval(DirKernel::Fejer, 1.0, 0.0, ptr::null_mut()) }, DirStatus::NullPointer);
}

#[test]
fn kernels() {
    let mut v = 0.0;
    assert_eq!(unsafe { dir_kernel_ft(DirKernel::Fejer, 2.0, 1.0, &mut v) }, DirStatus::Ok);
    assert!((v - 0.5).abs() < 1e-15);
    assert_eq!(unsafe { dir_kernel_ft(DirKernel::Poisson, 0.5, -2.0, &mut v) }, DirStatus::Ok);
    assert!((v - (-1.0f64).exp()).abs() < 1e-15);
    assert_eq!(unsafe { dir_kernel_eval(DirKernel::Poisson, 1.0, 0.0, &mut v) }, DirStatus::Ok);
    assert!((v - 1.0 / std::f64::consts::PI).abs() < 1e-15);
}

#[test]
fn series_partial_sum() {
    let json = CString::new(r#"{"frequency":{"kind":"log_n"},"coefficients":{"kind":"ones"}}"#).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { dir_series_from_json(json.as_ptr(), &mut h) }, DirStatus::Ok);
    let (mut re, mut im) = (0.0, 0.0);
    // terms with log n < log 3 + tiny: n = 1, 2, 3 at s = 2
    assert_eq!(unsafe { dir_series_partial_sum(h, 3f64.ln() + 1e-12, 2.0, 0.0, &mut re, &mut im) }, DirStatus::Ok);
    assert!((re - (1.0 + 0.25 + 1.0 / 9.0)).abs() < 1e-14 && im == 0.0);
    assert_eq!(unsafe { dir_series_partial_sum(h, 0.0, 2.0, 0.0, &mut re, &mut im) }, DirStatus::InvalidInput);
    unsafe { dir_series_free(h) };
}

#[test]
fn header_is_generated_and_compiles() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/dirichlet.h");
    let text = std::fs::read_to_string(header).unwrap();
    for sym in ["dir_frequency_from_json", "dir_series_partial_sum", "dir_last_error", "DIR_STATUS_PANIC"] {
        assert!(text.contains(sym), "{sym} missing from header");
    }
    // syntax-check with the system C compiler when one is present
    if let Ok(status) = std::process::Command::new("cc").args(["-fsyntax-only", "-x", "c", header]).status() {
        assert!(status.success());
    }
}

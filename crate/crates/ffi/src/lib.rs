//! C ABI over `dirichlet-core`.
//!
//! Frequencies and series live behind opaque handles created from JSON and
//! released with the matching `*_free`. Every function returns a
//! [`DirStatus`]; on failure a message is available from [`dir_last_error`]
//! on the same thread. Panics never cross the boundary.

use dirichlet_core::frequency::{classify_bohr_theorem, estimate_l};
use dirichlet_core::koethe::gp_nuclearity_test;
use dirichlet_core::report::build_report;
use dirichlet_core::summation::KernelSpec;
use dirichlet_core::{DirichletSeries, Error, Frequency, Verdict};
use num_complex::Complex64;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Outcome of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidJson = 3,
    InvalidInput = 4,
    Unsupported = 5,
    OutOfRange = 6,
    Internal = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirVerdict {
    Holds = 0,
    Fails = 1,
    Inconclusive = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirKernel {
    /// Fejér kernel; the parameter is `x > 0`.
    Fejer = 0,
    /// Poisson kernel; the parameter is `sigma > 0`.
    Poisson = 1,
}

/// Opaque frequency handle.
pub struct DirFrequency(Frequency);

/// Opaque series handle.
pub struct DirSeries(DirichletSeries);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(DirStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::UnsupportedKind(_) => DirStatus::Unsupported,
            Error::OutOfRange { .. } | Error::HorizonExceeded { .. } => DirStatus::OutOfRange,
            _ => DirStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn null(name: &str) -> Failure {
    Failure(DirStatus::NullPointer, format!("`{name}` is null"))
}

/// Runs `f`, records any error or panic, and converts to a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> DirStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DirStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            DirStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(DirStatus::InvalidUtf8, format!("`{name}` is not UTF-8: {e}")))
}

unsafe fn parse<T: serde::de::DeserializeOwned>(p: *const c_char, name: &str) -> Result<T, Failure> {
    let s = read_str(p, name)?;
    serde_json::from_str(s).map_err(|e| {
        let status = if e.is_data() { DirStatus::InvalidInput } else { DirStatus::InvalidJson };
        Failure(status, format!("`{name}`: {e}"))
    })
}

unsafe fn out<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(name))
}

fn verdict(v: Verdict) -> DirVerdict {
    match v {
        Verdict::Holds => DirVerdict::Holds,
        Verdict::Fails => DirVerdict::Fails,
        Verdict::Inconclusive => DirVerdict::Inconclusive,
    }
}

fn string_out(s: String, dst: &mut *mut c_char) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure(DirStatus::Internal, e.to_string()))?;
    *dst = c.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dir_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a frequency from JSON such as `{"kind":"log_n"}`.
///
/// # Safety
/// `json` must be null or a nul-terminated string; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn dir_frequency_from_json(json: *const c_char, out_handle: *mut *mut DirFrequency) -> DirStatus {
    guard(|| {
        let dst = out(out_handle, "out")?;
        let f: Frequency = parse(json, "json")?;
        *dst = Box::into_raw(Box::new(DirFrequency(f)));
        Ok(())
    })
}

/// # Safety
/// `handle` must be null or come from [`dir_frequency_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dir_frequency_free(handle: *mut DirFrequency) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Writes `λ_1..λ_n` into `buf`, which must hold `n` doubles.
///
/// # Safety
/// `handle` must be a live handle; `buf` must be valid for `n` writes.
#[no_mangle]
pub unsafe extern "C" fn dir_frequency_materialize(handle: *const DirFrequency, n: usize, buf: *mut f64) -> DirStatus {
    guard(|| {
        let f = &handle.as_ref().ok_or_else(|| null("handle"))?.0;
        if buf.is_null() {
            return Err(null("buf"));
        }
        let values = f.materialize(n)?;
        std::slice::from_raw_parts_mut(buf, n).copy_from_slice(&values);
        Ok(())
    })
}

/// Trailing-window estimate of `L(λ) = limsup log n / λ_n`. `value` receives
/// a representative number (`0` for "at most 0", infinities as IEEE
/// infinities); `confidence` tells whether the value is exact.
///
/// # Safety
/// `handle` must be a live handle; output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn dir_frequency_estimate_l(
    handle: *const DirFrequency,
    n_max: usize,
    window: usize,
    value: *mut f64,
    confidence: *mut DirVerdict,
) -> DirStatus {
    guard(|| {
        let f = &handle.as_ref().ok_or_else(|| null("handle"))?.0;
        let value = out(value, "value")?;
        let confidence = out(confidence, "confidence")?;
        let e = estimate_l(f, n_max, window)?;
        *value = e.value.representative();
        *confidence = verdict(e.confidence.verdict);
        Ok(())
    })
}

/// Whether Bohr's theorem holds for the frequency.
///
/// # Safety
/// `handle` must be a live handle; `out_verdict` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dir_frequency_classify_bohr(
    handle: *const DirFrequency,
    out_verdict: *mut DirVerdict,
) -> DirStatus {
    guard(|| {
        let f = &handle.as_ref().ok_or_else(|| null("handle"))?.0;
        *out(out_verdict, "out")? = verdict(classify_bohr_theorem(f).verdict);
        Ok(())
    })
}

/// Structure report as a JSON string; release it with [`dir_string_free`].
///
/// # Safety
/// `handle` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dir_frequency_report_json(
    handle: *const DirFrequency,
    out_json: *mut *mut c_char,
) -> DirStatus {
    guard(|| {
        let f = &handle.as_ref().ok_or_else(|| null("handle"))?.0;
        let dst = out(out_json, "out")?;
        let s = serde_json::to_string(&build_report(f)).map_err(|e| Failure(DirStatus::Internal, e.to_string()))?;
        string_out(s, dst)
    })
}

/// Grothendieck–Pietsch nuclearity verdict for the Köthe space of the frequency.
///
/// # Safety
/// `handle` must be a live handle; `out_verdict` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dir_gp_nuclearity(
    handle: *const DirFrequency,
    k_max: u32,
    n_max: usize,
    out_verdict: *mut DirVerdict,
) -> DirStatus {
    guard(|| {
        let f = &handle.as_ref().ok_or_else(|| null("handle"))?.0;
        let dst = out(out_verdict, "out")?;
        *dst = verdict(gp_nuclearity_test(f, k_max, n_max)?.verdict.verdict);
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn dir_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn kernel(kind: DirKernel, param: f64) -> Result<KernelSpec, Failure> {
    Ok(match kind {
        DirKernel::Fejer => KernelSpec::fejer(param)?,
        DirKernel::Poisson => KernelSpec::poisson(param)?,
    })
}

/// Kernel value at `t`.
///
/// # Safety
/// `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dir_kernel_eval(kind: DirKernel, param: f64, t: f64, out_value: *mut f64) -> DirStatus {
    guard(|| {
        let dst = out(out_value, "out")?;
        *dst = kernel(kind, param)?.eval(t);
        Ok(())
    })
}

/// Fourier transform `∫ K(u) e^{-itu} du` of the kernel at `t`.
///
/// # Safety
/// `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dir_kernel_ft(kind: DirKernel, param: f64, t: f64, out_value: *mut f64) -> DirStatus {
    guard(|| {
        let dst = out(out_value, "out")?;
        *dst = kernel(kind, param)?.ft(t);
        Ok(())
    })
}

/// Parses a series from JSON `{"frequency": ..., "coefficients": ...}`.
///
/// # Safety
/// `json` must be null or a nul-terminated string; `out_handle` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dir_series_from_json(json: *const c_char, out_handle: *mut *mut DirSeries) -> DirStatus {
    guard(|| {
        let dst = out(out_handle, "out")?;
        let d: DirichletSeries = parse(json, "json")?;
        *dst = Box::into_raw(Box::new(DirSeries(d)));
        Ok(())
    })
}

/// # Safety
/// `handle` must be null or come from [`dir_series_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dir_series_free(handle: *mut DirSeries) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// `Σ_{λ_n < x} a_n e^{-λ_n s}` at `s = s_re + i s_im`.
///
/// # Safety
/// `handle` must be a live handle; output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn dir_series_partial_sum(
    handle: *const DirSeries,
    x: f64,
    s_re: f64,
    s_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> DirStatus {
    guard(|| {
        let d = &handle.as_ref().ok_or_else(|| null("handle"))?.0;
        let re = out(out_re, "out_re")?;
        let im = out(out_im, "out_im")?;
        let v = d.partial_sum(x, Complex64::new(s_re, s_im))?;
        *re = v.re;
        *im = v.im;
        Ok(())
    })
}

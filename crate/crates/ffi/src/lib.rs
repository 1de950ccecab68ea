//! C ABI for the fracwave library.
//!
//! Scalar entry points for the Mittag-Leffler evaluator and the regime
//! arithmetic, an opaque-handle fast kernel evaluator, and a JSON-driven
//! simulation runner. All functions are `catch_unwind`-guarded and return
//! [`FwStatus`]; outputs travel through caller-provided pointers. The
//! matching header is generated by cbindgen into `include/fracwave.h`.

use fracwave::cli::config::SimulateConfig;
use fracwave::mild_solver::Termination;
use fracwave::mittag_leffler::{ml_deriv_reduction, ml_eval, MLParams, MlInterpolant};
use fracwave::regime_analyzer::{
    blowup_proof_exponents, classify, derive_exponents, ParamPoint,
};
use libc::{c_char, size_t};
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    EvalFailed = 3,
    Utf8 = 4,
    Json = 5,
    BufferTooSmall = 6,
    RunFailed = 7,
    Panic = 8,
}

/// Derived exponents of the global-existence analysis.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct FwDerivedExponents {
    pub delta: f64,
    pub delta_lo: f64,
    pub delta_hi: f64,
    pub r1: f64,
    pub r2: f64,
    pub s1: f64,
    pub s2: f64,
    pub sigma1: f64,
    pub sigma2: f64,
}

/// Test-function exponents for one scaling choice.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct FwBlowupExponents {
    pub lambda: f64,
    pub delta1: f64,
    pub delta2: f64,
}

/// Classification tags (mirrors the library enum).
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FwClassification {
    GlobalSmallData = 0,
    BlowUp = 1,
    Indeterminate = 2,
    BothConditionsFail = 3,
    Inconsistent = 4,
}

/// Simulation outcome tag.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FwTermination {
    Completed = 0,
    BlewUp = 1,
    Aborted = 2,
}

fn guard<F: FnOnce() -> FwStatus>(f: F) -> FwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => FwStatus::Panic,
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn fracwave_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Evaluate `E_{alpha,beta}(z)`.
#[no_mangle]
pub extern "C" fn fracwave_ml_eval(
    alpha: f64,
    beta: f64,
    z: f64,
    out: *mut f64,
) -> FwStatus {
    guard(|| {
        if out.is_null() {
            return FwStatus::NullPointer;
        }
        match ml_eval(MLParams::new(alpha, beta, z)) {
            Ok(v) => {
                unsafe { *out = v };
                FwStatus::Ok
            }
            Err(_) => FwStatus::EvalFailed,
        }
    })
}

/// `t^{beta-m-1} E_{alpha,beta-m}(lam t^alpha)`, `m` in {0, 1}.
#[no_mangle]
pub extern "C" fn fracwave_ml_deriv_reduction(
    alpha: f64,
    beta: f64,
    t: f64,
    lam: f64,
    m: u32,
    out: *mut f64,
) -> FwStatus {
    guard(|| {
        if out.is_null() {
            return FwStatus::NullPointer;
        }
        match ml_deriv_reduction(alpha, beta, t, lam, m) {
            Ok(v) => {
                unsafe { *out = v };
                FwStatus::Ok
            }
            Err(_) => FwStatus::EvalFailed,
        }
    })
}

/// Opaque fast evaluator of `w -> E_{alpha,beta}(-w)` on `[0, w_max]`.
pub struct FwMlKernel {
    inner: MlInterpolant,
}

/// Build a kernel evaluator; returns NULL on invalid parameters.
#[no_mangle]
pub extern "C" fn fracwave_ml_kernel_new(alpha: f64, beta: f64, w_max: f64) -> *mut FwMlKernel {
    let r = catch_unwind(|| {
        if !(alpha > 0.0 && alpha <= 2.0 && beta.is_finite() && w_max > 1.0) {
            return std::ptr::null_mut();
        }
        match MlInterpolant::build(alpha, beta, w_max) {
            Ok(inner) => Box::into_raw(Box::new(FwMlKernel { inner })),
            Err(_) => std::ptr::null_mut(),
        }
    });
    r.unwrap_or(std::ptr::null_mut())
}

/// Evaluate `E_{alpha,beta}(-w)` through the handle.
///
/// # Safety
/// `handle` must come from [`fracwave_ml_kernel_new`] and not be freed.
#[no_mangle]
pub unsafe extern "C" fn fracwave_ml_kernel_eval_neg(
    handle: *const FwMlKernel,
    w: f64,
    out: *mut f64,
) -> FwStatus {
    guard(|| {
        if handle.is_null() || out.is_null() {
            return FwStatus::NullPointer;
        }
        if !(w >= 0.0) {
            return FwStatus::InvalidArgument;
        }
        let v = unsafe { &(*handle).inner }.eval_neg(w);
        unsafe { *out = v };
        FwStatus::Ok
    })
}

/// Release a kernel handle (NULL is a no-op).
///
/// # Safety
/// `handle` must come from [`fracwave_ml_kernel_new`], freed at most once.
#[no_mangle]
pub unsafe extern "C" fn fracwave_ml_kernel_free(handle: *mut FwMlKernel) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

fn point_from(gamma1: f64, gamma2: f64, p: f64, q: f64, dim: u32) -> Option<ParamPoint> {
    ParamPoint::new(gamma1, gamma2, p, q, dim).ok()
}

/// Classify a parameter point; writes the classification tag.
#[no_mangle]
pub extern "C" fn fracwave_classify(
    gamma1: f64,
    gamma2: f64,
    p: f64,
    q: f64,
    dim: u32,
    out: *mut FwClassification,
) -> FwStatus {
    guard(|| {
        if out.is_null() {
            return FwStatus::NullPointer;
        }
        let Some(pt) = point_from(gamma1, gamma2, p, q, dim) else {
            return FwStatus::InvalidArgument;
        };
        match classify(&pt) {
            Ok(r) => {
                use fracwave::regime_analyzer::Classification as C;
                let tag = match r.classification {
                    C::GlobalSmallData => FwClassification::GlobalSmallData,
                    C::BlowUp => FwClassification::BlowUp,
                    C::Indeterminate => FwClassification::Indeterminate,
                    C::BothConditionsFail => FwClassification::BothConditionsFail,
                    C::Inconsistent => FwClassification::Inconsistent,
                };
                unsafe { *out = tag };
                FwStatus::Ok
            }
            Err(_) => FwStatus::InvalidArgument,
        }
    })
}

/// Full classification report as JSON into a caller buffer (NUL-terminated);
/// `written` receives the byte count excluding the terminator.
#[no_mangle]
pub extern "C" fn fracwave_classify_json(
    gamma1: f64,
    gamma2: f64,
    p: f64,
    q: f64,
    dim: u32,
    buf: *mut c_char,
    buf_len: size_t,
    written: *mut size_t,
) -> FwStatus {
    guard(|| {
        if buf.is_null() || written.is_null() {
            return FwStatus::NullPointer;
        }
        let Some(pt) = point_from(gamma1, gamma2, p, q, dim) else {
            return FwStatus::InvalidArgument;
        };
        let Ok(report) = classify(&pt) else {
            return FwStatus::InvalidArgument;
        };
        let json = match serde_json::to_string(&report) {
            Ok(s) => s,
            Err(_) => return FwStatus::Json,
        };
        let bytes = json.as_bytes();
        if bytes.len() + 1 > buf_len {
            unsafe { *written = bytes.len() + 1 };
            return FwStatus::BufferTooSmall;
        }
        unsafe {
            std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf as *mut u8, bytes.len());
            *buf.add(bytes.len()) = 0;
            *written = bytes.len();
        }
        FwStatus::Ok
    })
}

/// Derived exponents at `delta` (pass NaN for the window midpoint).
#[no_mangle]
pub extern "C" fn fracwave_derive_exponents(
    gamma1: f64,
    gamma2: f64,
    p: f64,
    q: f64,
    dim: u32,
    delta: f64,
    out: *mut FwDerivedExponents,
) -> FwStatus {
    guard(|| {
        if out.is_null() {
            return FwStatus::NullPointer;
        }
        let Some(pt) = point_from(gamma1, gamma2, p, q, dim) else {
            return FwStatus::InvalidArgument;
        };
        let d = if delta.is_nan() { None } else { Some(delta) };
        match derive_exponents(&pt, d) {
            Ok(e) => {
                unsafe {
                    *out = FwDerivedExponents {
                        delta: e.delta,
                        delta_lo: e.delta_window.0,
                        delta_hi: e.delta_window.1,
                        r1: e.r1,
                        r2: e.r2,
                        s1: e.s1,
                        s2: e.s2,
                        sigma1: e.sigma1,
                        sigma2: e.sigma2,
                    };
                }
                FwStatus::Ok
            }
            Err(_) => FwStatus::InvalidArgument,
        }
    })
}

/// Blow-up test-function exponents for both scaling choices; `out` must
/// hold two elements.
#[no_mangle]
pub extern "C" fn fracwave_blowup_exponents(
    gamma1: f64,
    gamma2: f64,
    p: f64,
    q: f64,
    dim: u32,
    out: *mut FwBlowupExponents,
) -> FwStatus {
    guard(|| {
        if out.is_null() {
            return FwStatus::NullPointer;
        }
        let Some(pt) = point_from(gamma1, gamma2, p, q, dim) else {
            return FwStatus::InvalidArgument;
        };
        match blowup_proof_exponents(&pt) {
            Ok(v) if v.len() == 2 => {
                for (i, e) in v.iter().enumerate() {
                    unsafe {
                        *out.add(i) = FwBlowupExponents {
                            lambda: e.lambda,
                            delta1: e.delta1,
                            delta2: e.delta2,
                        };
                    }
                }
                FwStatus::Ok
            }
            _ => FwStatus::InvalidArgument,
        }
    })
}

/// Run a simulation from a JSON configuration string; artifacts go to
/// `out_dir` when non-NULL. Reports the termination tag and, for blow-up,
/// the estimated time through `t_est` (NaN otherwise).
///
/// # Safety
/// `config_json` (and `out_dir` when non-NULL) must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn fracwave_simulate_json(
    config_json: *const c_char,
    out_dir: *const c_char,
    termination: *mut FwTermination,
    t_est: *mut f64,
) -> FwStatus {
    guard(|| {
        if config_json.is_null() || termination.is_null() || t_est.is_null() {
            return FwStatus::NullPointer;
        }
        let text = match unsafe { CStr::from_ptr(config_json) }.to_str() {
            Ok(s) => s,
            Err(_) => return FwStatus::Utf8,
        };
        let cfg: SimulateConfig = match serde_json::from_str(text) {
            Ok(c) => c,
            Err(_) => return FwStatus::Json,
        };
        let dir = if out_dir.is_null() {
            None
        } else {
            match unsafe { CStr::from_ptr(out_dir) }.to_str() {
                Ok(s) => Some(s.to_owned()),
                Err(_) => return FwStatus::Utf8,
            }
        };
        match fracwave::cli::run_simulation(&cfg, dir.as_deref().map(Path::new)) {
            Ok((history, _)) => {
                let (tag, te) = match history.termination {
                    Termination::Completed => (FwTermination::Completed, f64::NAN),
                    Termination::BlewUp { t_est } => (FwTermination::BlewUp, t_est),
                    Termination::Aborted { .. } => (FwTermination::Aborted, f64::NAN),
                };
                unsafe {
                    *termination = tag;
                    *t_est = te;
                }
                FwStatus::Ok
            }
            Err(_) => FwStatus::RunFailed,
        }
    })
}

/// Convenience: a heap copy of the last classification JSON is unnecessary —
/// callers manage buffers — but string results allocated by this library
/// must be released here.
#[no_mangle]
pub extern "C" fn fracwave_string_free(s: *mut c_char) {
    if !s.is_null() {
        unsafe { drop(CString::from_raw(s)) };
    }
}

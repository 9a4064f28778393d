//! C ABI over `instanton-core`.
//!
//! Objects cross the boundary as opaque handles created by `*_new` or
//! `*_solve` style constructors and released with the matching `*_free`.
//! Every fallible call returns a [`DwStatus`]; on failure the message is
//! available from [`dw_last_error`] on the same thread until the next call.
//! Panics are caught at the boundary and reported as `DW_STATUS_PANIC`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use instanton_core::background::{self, ClassicalPath, FiniteInstanton};
use instanton_core::elliptic::{self, EllipticModulus};
use instanton_core::propagator::{self, TunnelingReport};
use instanton_core::{action, model, DoubleWellParams, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NoInstanton = 3,
    SingularPoint = 4,
    NumericalFailure = 5,
    Panic = 6,
}

/// Model parameters `(M, ω, δ, ħ)`.
pub struct DwParams(DoubleWellParams);

/// A finite-size instanton with its solved integration constant.
pub struct DwInstanton(FiniteInstanton);

/// Result of the full tunneling pipeline at one size.
pub struct DwReport(TunnelingReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_for(e: &Error) -> DwStatus {
    match e {
        Error::Domain(_) | Error::Config(_) | Error::DegenerateModulus(_) => {
            DwStatus::InvalidArgument
        }
        Error::NoInstanton { .. } => DwStatus::NoInstanton,
        Error::SingularPoint { .. } => DwStatus::SingularPoint,
        _ => DwStatus::NumericalFailure,
    }
}

// Runs `f` behind the panic guard and records any failure message.
fn guard<F: FnOnce() -> Result<(), (DwStatus, String)>>(f: F) -> DwStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DwStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            DwStatus::Panic
        }
    }
}

fn core<T>(r: instanton_core::Result<T>) -> Result<T, (DwStatus, String)> {
    r.map_err(|e| (status_for(&e), e.to_string()))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (DwStatus, String)> {
    p.as_ref()
        .ok_or_else(|| (DwStatus::NullPointer, format!("{what} is null")))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), (DwStatus, String)> {
    if out.is_null() {
        return Err((DwStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(v);
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn dw_version() -> *const c_char {
    static VERSION: &[u8] = concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes();
    VERSION.as_ptr() as *const c_char
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn dw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub unsafe extern "C" fn dw_params_new(
    mass: f64,
    omega: f64,
    delta: f64,
    hbar: f64,
    out: *mut *mut DwParams,
) -> DwStatus {
    guard(|| {
        let p = core(DoubleWellParams::new(mass, omega, delta, hbar))?;
        write(out, Box::into_raw(Box::new(DwParams(p))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn dw_params_free(params: *mut DwParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// `V(x)`.
#[no_mangle]
pub unsafe extern "C" fn dw_potential(params: *const DwParams, x: f64, out: *mut f64) -> DwStatus {
    guard(|| {
        let p = deref(params, "params")?;
        write(out, model::potential(&p.0, x))
    })
}

/// Infinite-size tunneling frequency `Ω∞`.
#[no_mangle]
pub unsafe extern "C" fn dw_omega_infinity(params: *const DwParams, out: *mut f64) -> DwStatus {
    guard(|| {
        let p = deref(params, "params")?;
        write(out, propagator::omega_infinity(&p.0))
    })
}

/// Kink action on the infinite line.
#[no_mangle]
pub unsafe extern "C" fn dw_asymptotic_action(params: *const DwParams, out: *mut f64) -> DwStatus {
    guard(|| {
        let p = deref(params, "params")?;
        write(out, action::asymptotic_action(&p.0))
    })
}

/// Complete elliptic integral `K(s)` for `0 <= s² < 1`.
#[no_mangle]
pub unsafe extern "C" fn dw_complete_k(s_squared: f64, out: *mut f64) -> DwStatus {
    guard(|| {
        let m = core(EllipticModulus::from_s_squared(s_squared))?;
        write(out, core(elliptic::complete_k(&m))?)
    })
}

/// `sn, cn, dn` at argument `u` and parameter `s²`.
#[no_mangle]
pub unsafe extern "C" fn dw_jacobi(
    u: f64,
    s_squared: f64,
    sn: *mut f64,
    cn: *mut f64,
    dn: *mut f64,
) -> DwStatus {
    guard(|| {
        let m = core(EllipticModulus::from_s_squared(s_squared))?;
        let t = elliptic::jacobi_sn_cn_dn(u, &m);
        write(sn, t.sn)?;
        write(cn, t.cn)?;
        write(dn, t.dn)
    })
}

/// Solve for the instanton that reaches the wells at `τ = ±L/2`.
#[no_mangle]
pub unsafe extern "C" fn dw_instanton_solve(
    params: *const DwParams,
    size: f64,
    out: *mut *mut DwInstanton,
) -> DwStatus {
    guard(|| {
        let p = deref(params, "params")?;
        let f = core(background::solve_energy_for_size(&p.0, size))?;
        write(out, Box::into_raw(Box::new(DwInstanton(f))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn dw_instanton_free(inst: *mut DwInstanton) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Integration constant `E`.
#[no_mangle]
pub unsafe extern "C" fn dw_instanton_energy(inst: *const DwInstanton, out: *mut f64) -> DwStatus {
    guard(|| {
        let f = deref(inst, "instanton")?;
        write(out, f.0.energy)
    })
}

#[no_mangle]
pub unsafe extern "C" fn dw_instanton_position(
    inst: *const DwInstanton,
    tau: f64,
    out: *mut f64,
) -> DwStatus {
    guard(|| {
        let f = deref(inst, "instanton")?;
        write(out, f.0.position(tau))
    })
}

#[no_mangle]
pub unsafe extern "C" fn dw_instanton_velocity(
    inst: *const DwInstanton,
    tau: f64,
    out: *mut f64,
) -> DwStatus {
    guard(|| {
        let f = deref(inst, "instanton")?;
        write(out, f.0.velocity(tau))
    })
}

/// Run the full pipeline at size `L` with default options.
#[no_mangle]
pub unsafe extern "C" fn dw_report_finite(
    params: *const DwParams,
    size: f64,
    out: *mut *mut DwReport,
) -> DwStatus {
    guard(|| {
        let p = deref(params, "params")?;
        let r = core(propagator::amplitude_finite(&p.0, size))?;
        write(out, Box::into_raw(Box::new(DwReport(r))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn dw_report_free(report: *mut DwReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// `Ω(L)`.
#[no_mangle]
pub unsafe extern "C" fn dw_report_omega(report: *const DwReport, out: *mut f64) -> DwStatus {
    guard(|| {
        let r = deref(report, "report")?;
        write(out, r.0.omega_tunnel)
    })
}

#[no_mangle]
pub unsafe extern "C" fn dw_report_action(report: *const DwReport, out: *mut f64) -> DwStatus {
    guard(|| {
        let r = deref(report, "report")?;
        write(out, r.0.action)
    })
}

/// Amplitude, or `DW_STATUS_INVALID_ARGUMENT` when the report has none.
#[no_mangle]
pub unsafe extern "C" fn dw_report_amplitude(report: *const DwReport, out: *mut f64) -> DwStatus {
    guard(|| {
        let r = deref(report, "report")?;
        let a = r.0.amplitude.ok_or((
            DwStatus::InvalidArgument,
            "report has no amplitude".to_string(),
        ))?;
        write(out, a)
    })
}

/// Serialize the report as JSON. Release the string with [`dw_string_free`].
#[no_mangle]
pub unsafe extern "C" fn dw_report_to_json(
    report: *const DwReport,
    out: *mut *mut c_char,
) -> DwStatus {
    guard(|| {
        let r = deref(report, "report")?;
        let text =
            serde_json::to_string(&r.0).map_err(|e| (DwStatus::NumericalFailure, e.to_string()))?;
        let c = CString::new(text).map_err(|e| (DwStatus::NumericalFailure, e.to_string()))?;
        write(out, c.into_raw())
    })
}

#[no_mangle]
pub unsafe extern "C" fn dw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

use std::ffi::CStr;
use std::ptr;

use instanton_ffi::*;

fn params() -> *mut DwParams {
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { dw_params_new(1.0, 1.0, 1.0, 1.0, &mut p) },
        DwStatus::Ok
    );
    assert!(!p.is_null());
    p
}

fn last_error() -> String {
    let e = dw_last_error();
    assert!(!e.is_null());
    unsafe { CStr::from_ptr(e) }.to_string_lossy().into_owned()
}

#[test]
fn version_is_a_c_string() {
    let v = unsafe { CStr::from_ptr(dw_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn params_and_scalars() {
    let p = params();
    let mut v = f64::NAN;
    unsafe {
        assert_eq!(dw_potential(p, 0.0, &mut v), DwStatus::Ok);
        assert!((v - 0.25).abs() < 1e-15);
        assert_eq!(dw_asymptotic_action(p, &mut v), DwStatus::Ok);
        assert!((v - 2.0 * 2f64.sqrt() / 3.0).abs() < 1e-15);
        assert_eq!(dw_omega_infinity(p, &mut v), DwStatus::Ok);
        assert!((v - 0.522_703_964_410_409_4).abs() < 1e-12);
        dw_params_free(p);
    }
}

#[test]
fn invalid_parameters_report_an_error() {
    let mut p = ptr::null_mut();
    let s = unsafe { dw_params_new(1.0, 1.0, -1.0, 1.0, &mut p) };
    assert_eq!(s, DwStatus::InvalidArgument);
    assert!(p.is_null());
    assert!(!last_error().is_empty());
    // a successful call clears the message
    let p = params();
    assert!(dw_last_error().is_null());
    unsafe { dw_params_free(p) };
}

#[test]
fn null_pointers_are_rejected() {
    let mut v = 0.0;
    unsafe {
        assert_eq!(
            dw_potential(ptr::null(), 0.0, &mut v),
            DwStatus::NullPointer
        );
        let p = params();
        assert_eq!(dw_potential(p, 0.0, ptr::null_mut()), DwStatus::NullPointer);
        dw_params_free(p);
        dw_params_free(ptr::null_mut());
        dw_instanton_free(ptr::null_mut());
        dw_report_free(ptr::null_mut());
        dw_string_free(ptr::null_mut());
    }
}

#[test]
fn elliptic_functions() {
    let (mut k, mut sn, mut cn, mut dn) = (0.0, 0.0, 0.0, 0.0);
    unsafe {
        assert_eq!(dw_complete_k(0.0, &mut k), DwStatus::Ok);
        assert!((k - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert_eq!(dw_complete_k(1.0, &mut k), DwStatus::InvalidArgument);
        assert_eq!(dw_jacobi(0.7, 0.5, &mut sn, &mut cn, &mut dn), DwStatus::Ok);
    }
    assert!((sn * sn + cn * cn - 1.0).abs() < 1e-15);
    assert!((dn * dn + 0.5 * sn * sn - 1.0).abs() < 1e-15);
}

#[test]
fn instanton_reaches_the_wells() {
    let p = params();
    let mut inst = ptr::null_mut();
    let (mut e, mut x, mut v) = (0.0, 0.0, 0.0);
    unsafe {
        assert_eq!(dw_instanton_solve(p, 10.0, &mut inst), DwStatus::Ok);
        assert_eq!(dw_instanton_energy(inst, &mut e), DwStatus::Ok);
        assert!(e > 0.0 && e < 1e-4);
        assert_eq!(dw_instanton_position(inst, 5.0, &mut x), DwStatus::Ok);
        assert!((x - 1.0).abs() < 1e-10);
        assert_eq!(dw_instanton_position(inst, 0.0, &mut x), DwStatus::Ok);
        assert!(x.abs() < 1e-14);
        assert_eq!(dw_instanton_velocity(inst, 0.0, &mut v), DwStatus::Ok);
        assert!(v > 0.0);
        dw_instanton_free(inst);

        let mut bad = ptr::null_mut();
        assert_ne!(dw_instanton_solve(p, -1.0, &mut bad), DwStatus::Ok);
        assert!(bad.is_null());
        dw_params_free(p);
    }
}

#[test]
fn report_round_trip() {
    let p = params();
    let mut r = ptr::null_mut();
    let (mut omega, mut action, mut amp) = (0.0, 0.0, 0.0);
    let mut json = ptr::null_mut();
    unsafe {
        assert_eq!(dw_report_finite(p, 12.0, &mut r), DwStatus::Ok);
        assert_eq!(dw_report_omega(r, &mut omega), DwStatus::Ok);
        assert_eq!(dw_report_action(r, &mut action), DwStatus::Ok);
        assert_eq!(dw_report_amplitude(r, &mut amp), DwStatus::Ok);
        assert!(omega > 0.0 && action > 0.0 && amp > 0.0);
        assert_eq!(dw_report_to_json(r, &mut json), DwStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        dw_string_free(json);
        dw_report_free(r);
        dw_params_free(p);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["L"].as_f64(), Some(12.0));
        assert_eq!(v["omega_tunnel"].as_f64(), Some(omega));
    }
}

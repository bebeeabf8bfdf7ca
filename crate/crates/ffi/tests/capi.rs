//! Exercises the C ABI from Rust exactly as a foreign caller would:
//! raw pointers, status codes, opaque handles.

use nabla_fde_ffi::*;
use std::ffi::CStr;
use std::ptr;

#[test]
fn solve_classify_and_free_through_the_abi() {
    unsafe {
        let b = [1.0f64];
        let mut sys: *mut NfdeSystem = ptr::null_mut();
        let st = nfde_system_new(0.5, -0.2, 0, b.as_ptr(), 1, &mut sys);
        assert_eq!(st, NfdeStatus::Ok);
        assert!(!sys.is_null());

        let mut resp: *mut NfdeResponse = ptr::null_mut();
        let st = nfde_solve(sys, NfdeMethod::Recursive, ptr::null(), 0, 10, 0.0, &mut resp);
        assert_eq!(st, NfdeStatus::Ok);
        assert_eq!(nfde_response_len(resp), 10);
        assert_eq!(nfde_response_origin(resp), 0);

        let mut buf = [0.0f64; 10];
        let st = nfde_response_values(resp, buf.as_mut_ptr(), buf.len());
        assert_eq!(st, NfdeStatus::Ok);
        assert!((buf[0] - 5.0 / 6.0).abs() < 1e-15);
        assert!((buf[1] - 55.0 / 72.0).abs() < 1e-15);

        let mut short = [0.0f64; 3];
        assert_eq!(
            nfde_response_values(resp, short.as_mut_ptr(), short.len()),
            NfdeStatus::BufferTooSmall
        );
        assert!(!nfde_response_overflowed(resp, ptr::null_mut()));

        let mut verdict = NfdeVerdict::Divergent;
        let st = nfde_classify(0.5, -0.2, b.as_ptr(), 1, 0.0, &mut verdict);
        assert_eq!(st, NfdeStatus::Ok);
        assert_eq!(verdict, NfdeVerdict::MonotoneConvergent);
        let name = CStr::from_ptr(nfde_verdict_name(verdict));
        assert_eq!(name.to_str().unwrap(), "MonotoneConvergent");

        nfde_response_free(resp);
        nfde_system_free(sys);
    }
}

#[test]
fn explicit_and_recursive_agree_through_the_abi() {
    unsafe {
        let b = [1.0f64, 0.0];
        let mut sys: *mut NfdeSystem = ptr::null_mut();
        assert_eq!(
            nfde_system_new(1.5, -0.2, 1, b.as_ptr(), 2, &mut sys),
            NfdeStatus::Ok
        );
        let mut rec: *mut NfdeResponse = ptr::null_mut();
        let mut exp: *mut NfdeResponse = ptr::null_mut();
        assert_eq!(
            nfde_solve(sys, NfdeMethod::Recursive, ptr::null(), 0, 50, 0.0, &mut rec),
            NfdeStatus::Ok
        );
        assert_eq!(
            nfde_solve(sys, NfdeMethod::Explicit, ptr::null(), 0, 50, 0.0, &mut exp),
            NfdeStatus::Ok
        );
        let mut yr = [0.0f64; 50];
        let mut ye = [0.0f64; 50];
        nfde_response_values(rec, yr.as_mut_ptr(), 50);
        nfde_response_values(exp, ye.as_mut_ptr(), 50);
        for i in 0..50 {
            assert!((yr[i] - ye[i]).abs() < 1e-9, "i={i}");
        }
        nfde_response_free(rec);
        nfde_response_free(exp);
        nfde_system_free(sys);
    }
}

#[test]
fn error_paths_surface_as_status_codes() {
    unsafe {
        let b = [1.0f64];
        let mut sys: *mut NfdeSystem = ptr::null_mut();
        assert_eq!(
            nfde_system_new(0.5, 1.0, 0, b.as_ptr(), 1, &mut sys),
            NfdeStatus::LambdaOne
        );
        assert_eq!(
            nfde_system_new(0.5, -0.2, 0, ptr::null(), 1, &mut sys),
            NfdeStatus::NullPointer
        );
        assert_eq!(
            nfde_system_new(-1.0, -0.2, 0, b.as_ptr(), 1, &mut sys),
            NfdeStatus::InvalidArgument
        );

        // |lambda| >= 1 on the explicit path
        let mut sys: *mut NfdeSystem = ptr::null_mut();
        assert_eq!(
            nfde_system_new(0.5, 1.5, 0, b.as_ptr(), 1, &mut sys),
            NfdeStatus::Ok
        );
        let mut resp: *mut NfdeResponse = ptr::null_mut();
        assert_eq!(
            nfde_solve(sys, NfdeMethod::Explicit, ptr::null(), 0, 10, 0.0, &mut resp),
            NfdeStatus::SeriesNotConvergent
        );
        // auto falls back to the recursion for |lambda| >= 0.95
        assert_eq!(
            nfde_solve(sys, NfdeMethod::Auto, ptr::null(), 0, 10, 0.0, &mut resp),
            NfdeStatus::Ok
        );
        nfde_response_free(resp);
        nfde_system_free(sys);

        let msg = CStr::from_ptr(nfde_status_message(NfdeStatus::SeriesNotConvergent));
        assert!(msg.to_str().unwrap().contains("recursive"));
    }
}

#[test]
fn ml_eval_and_scalars_through_the_abi() {
    unsafe {
        let mut value = 0.0f64;
        let mut terms = 0usize;
        let mut bound = 0.0f64;
        let st = nfde_ml_eval(1.0, 1.0, -0.2, 0, 3, 0.0, &mut value, &mut terms, &mut bound);
        assert_eq!(st, NfdeStatus::Ok);
        assert!((value - 0.578_703_703_703_703_7).abs() < 1e-14);

        let st = nfde_ml_eval(0.5, 1.0, 1.5, 0, 5, 0.0, &mut value, ptr::null_mut(), ptr::null_mut());
        assert_eq!(st, NfdeStatus::SeriesNotConvergent);

        let mut crit = 0.0f64;
        assert_eq!(nfde_critical_radius(2.5, &mut crit), NfdeStatus::Ok);
        assert!((crit - 0.300_283_106_000_777_7).abs() < 1e-13);
        assert_eq!(nfde_critical_radius(1.5, &mut crit), NfdeStatus::DomainError);

        let (mut re, mut im) = (0.0f64, 0.0f64);
        assert_eq!(nfde_principal_pole(2.0, -1.0, &mut re, &mut im), NfdeStatus::Ok);
        assert!(re.abs() < 1e-12);
        assert!((im + 1.0).abs() < 1e-12);
        assert_eq!(nfde_principal_pole(0.5, 0.0, &mut re, &mut im), NfdeStatus::NoPole);
    }
}

#[test]
fn generated_header_covers_the_surface() {
    let header = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/include/nabla_fde.h"
    ))
    .expect("header generated at build time");
    for sym in [
        "NfdeStatus",
        "NfdeMethod",
        "NfdeVerdict",
        "NfdeSystem",
        "NfdeResponse",
        "nfde_system_new",
        "nfde_solve",
        "nfde_response_values",
        "nfde_ml_eval",
        "nfde_classify",
        "nfde_critical_radius",
        "nfde_status_message",
    ] {
        assert!(header.contains(sym), "header misses {sym}");
    }
}

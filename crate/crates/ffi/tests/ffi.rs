use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use bimac_ffi::*;

fn take_string(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { bimac_string_free(s) };
    out
}

fn last_error() -> String {
    let p = bimac_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn scalar(s: &str) -> *mut BimacScalar {
    let c = CString::new(s).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { bimac_scalar_parse(c.as_ptr(), &mut out) }, BimacStatus::Ok);
    out
}

#[test]
fn e_polynomial_round_trip() {
    let eta = [1u32, 0];
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { bimac_e_new(eta.as_ptr(), 2, &mut p) }, BimacStatus::Ok);
    let mut n = 0;
    let mut terms = 0;
    unsafe {
        assert_eq!(bimac_poly_nvars(p, &mut n), BimacStatus::Ok);
        assert_eq!(bimac_poly_nterms(p, &mut terms), BimacStatus::Ok);
    }
    assert_eq!((n, terms), (2, 2));

    let mut c = ptr::null_mut();
    let exps = [0u32, 1];
    assert_eq!(unsafe { bimac_poly_coefficient(p, exps.as_ptr(), 2, &mut c) }, BimacStatus::Ok);
    let want = scalar("q*(1-t)/(1-q*t)");
    let mut eq = false;
    assert_eq!(unsafe { bimac_scalar_equal(c, want, &mut eq) }, BimacStatus::Ok);
    assert!(eq);

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { bimac_poly_render(p, BimacFormat::Json, &mut s) }, BimacStatus::Ok);
    assert!(take_string(s).starts_with('{'));
    unsafe {
        bimac_scalar_free(c);
        bimac_scalar_free(want);
        bimac_poly_free(p);
    }
}

#[test]
fn p_and_evaluation() {
    let lam = CString::new("1,0;").unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { bimac_p_new(lam.as_ptr(), 3, &mut p) }, BimacStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { bimac_poly_render(p, BimacFormat::Text, &mut s) }, BimacStatus::Ok);
    assert!(!take_string(s).is_empty());
    unsafe { bimac_poly_free(p) };

    let mut closed = ptr::null_mut();
    let mut direct = ptr::null_mut();
    let at = CString::new("1,0;").unwrap();
    unsafe {
        assert_eq!(bimac_evaluate(lam.as_ptr(), ptr::null(), 3, BimacSign::Minus, &mut closed), BimacStatus::Ok);
        assert_eq!(bimac_evaluate(lam.as_ptr(), at.as_ptr(), 3, BimacSign::Minus, &mut direct), BimacStatus::Ok);
        let mut eq = false;
        assert_eq!(bimac_scalar_equal(closed, direct, &mut eq), BimacStatus::Ok);
        assert!(eq);
        bimac_scalar_free(closed);
        bimac_scalar_free(direct);
    }
}

#[test]
fn lower_pieri_example() {
    let lam = CString::new("2,0;1").unwrap();
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { bimac_pieri(lam.as_ptr(), 5, 2, BimacVariant::Lower, &mut e) }, BimacStatus::Ok);
    let mut len = 0;
    assert_eq!(unsafe { bimac_expansion_len(e, &mut len) }, BimacStatus::Ok);
    assert_eq!(len, 3);
    let mut found = false;
    for i in 0..len {
        let mut o = ptr::null_mut();
        assert_eq!(unsafe { bimac_expansion_omega(e, i, &mut o) }, BimacStatus::Ok);
        if take_string(o) == "3,0;1,1" {
            let mut c = ptr::null_mut();
            assert_eq!(unsafe { bimac_expansion_coeff(e, i, &mut c) }, BimacStatus::Ok);
            let want = scalar("-q*(1+t)*(1-t)/(1-q*t^2)");
            let mut eq = false;
            unsafe {
                bimac_scalar_equal(c, want, &mut eq);
                bimac_scalar_free(c);
                bimac_scalar_free(want);
            }
            assert!(eq);
            found = true;
        }
    }
    assert!(found);
    let mut o = ptr::null_mut();
    assert_eq!(unsafe { bimac_expansion_omega(e, 3, &mut o) }, BimacStatus::IndexOutOfRange);
    assert!(last_error().contains("term 3"));
    unsafe { bimac_expansion_free(e) };
}

#[test]
fn pieri_check_and_verify() {
    let lam = CString::new("1;1").unwrap();
    let mut ok = false;
    assert_eq!(unsafe { bimac_pieri_check(lam.as_ptr(), 3, 1, BimacVariant::Upper, &mut ok) }, BimacStatus::Ok);
    assert!(ok);
    let suite = CString::new("eigen").unwrap();
    ok = false;
    assert_eq!(unsafe { bimac_verify(suite.as_ptr(), 3, 2, &mut ok) }, BimacStatus::Ok);
    assert!(ok);
    let bad = CString::new("nope").unwrap();
    assert_eq!(unsafe { bimac_verify(bad.as_ptr(), 3, 2, &mut ok) }, BimacStatus::Parse);
}

#[test]
fn error_codes() {
    let mut p = ptr::null_mut();
    let bad = CString::new("0,1;").unwrap();
    assert_eq!(unsafe { bimac_p_new(bad.as_ptr(), 3, &mut p) }, BimacStatus::Domain);
    assert!(last_error().contains("strictly decreasing"));
    let junk = CString::new("1,x;").unwrap();
    assert_eq!(unsafe { bimac_p_new(junk.as_ptr(), 3, &mut p) }, BimacStatus::Parse);
    assert_eq!(unsafe { bimac_p_new(ptr::null(), 3, &mut p) }, BimacStatus::NullPointer);
    let ok = CString::new("1;").unwrap();
    assert_eq!(unsafe { bimac_p_new(ok.as_ptr(), 2, ptr::null_mut()) }, BimacStatus::NullPointer);
    let mut n = 0;
    assert_eq!(unsafe { bimac_poly_nvars(ptr::null(), &mut n) }, BimacStatus::NullPointer);
    let zero = scalar("0");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { bimac_scalar_parse(CString::new("1/(1-1)").unwrap().as_ptr(), &mut s) }, BimacStatus::DivisionByZero);
    unsafe {
        bimac_scalar_free(zero);
        bimac_poly_free(ptr::null_mut());
        bimac_string_free(ptr::null_mut());
    }
    assert_eq!(unsafe { bimac_p_new(ok.as_ptr(), 2, &mut p) }, BimacStatus::Ok);
    assert!(bimac_last_error().is_null());
    unsafe { bimac_poly_free(p) };
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(crate_dir().join("include/bimac.h")).unwrap();
    for name in [
        "bimac_e_new",
        "bimac_p_new",
        "bimac_pieri",
        "bimac_evaluate",
        "bimac_verify",
        "bimac_last_error",
        "BIMAC_STATUS_OK",
        "typedef struct BimacPoly BimacPoly;",
    ] {
        assert!(h.contains(name), "{name} missing from header");
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "bimac.h"

int main(void) {
    BimacExpansion *e = NULL;
    if (bimac_pieri("2,0;1", 5, 2, BIMAC_VARIANT_UPPER, &e) != BIMAC_STATUS_OK) return 3;
    size_t len = 0;
    bimac_expansion_len(e, &len);
    for (size_t i = 0; i < len; i++) {
        char *omega = NULL;
        bimac_expansion_omega(e, i, &omega);
        printf("%s\n", omega);
        bimac_string_free(omega);
    }
    bimac_expansion_free(e);
    BimacPoly *p = NULL;
    if (bimac_p_new("0,1;", 3, &p) != BIMAC_STATUS_DOMAIN) return 4;
    if (bimac_last_error() == NULL) return 5;
    return 0;
}
"#;

#[test]
fn c_program_links_against_static_library() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler, skipping");
        return;
    }
    let exe_dir = std::env::current_exe().unwrap();
    let profile_dir = exe_dir.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libbimac_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built, skipping", lib.display());
        return;
    }
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("main.c");
    let bin = tmp.path().join("main");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<String> = String::from_utf8(out.stdout).unwrap().lines().map(String::from).collect();
    assert_eq!(lines, ["1,0;3,1", "2,0;1,1,1", "2,0;2,1", "2,1;1,1"]);
}

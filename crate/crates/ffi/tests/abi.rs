use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;

use gdalg_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { gdalg_string_free(s) };
    out
}

fn last_error() -> String {
    let p = gdalg_last_error();
    assert!(!p.is_null(), "expected an error message");
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn sgd_dimensions() {
    let expected = ["1", "3", "17", "130", "1219", "13391", "167656"];
    for (n, want) in (1..=7).zip(expected) {
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { gdalg_sgd_dim(n, &mut out) }, GdalgStatus::Ok);
        assert_eq!(take(out), want);
    }
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { gdalg_sgd_dim(0, &mut out) }, GdalgStatus::InvalidArgument);
    assert!(out.is_null());
    assert!(last_error().contains("degree"));
    assert_eq!(unsafe { gdalg_sgd_dim(3, ptr::null_mut()) }, GdalgStatus::NullPointer);
}

#[test]
fn errors_are_cleared_by_successful_calls() {
    let mut out = ptr::null_mut();
    unsafe { gdalg_sgd_dim(0, &mut out) };
    assert!(!gdalg_last_error().is_null());
    assert_eq!(unsafe { gdalg_sgd_dim(2, &mut out) }, GdalgStatus::Ok);
    take(out);
    assert!(gdalg_last_error().is_null());
}

#[test]
fn verify_identities() {
    let id = CString::new("gd1").unwrap();
    let map = CString::new("gd").unwrap();
    let mut image = ptr::null_mut();
    assert_eq!(
        unsafe { gdalg_verify_identity(id.as_ptr(), map.as_ptr(), ptr::null(), &mut image) },
        GdalgStatus::Ok
    );
    assert_eq!(take(image), "0");

    let bad = CString::new("pgd1-printed").unwrap();
    let target = CString::new("pois").unwrap();
    let gen = CString::new("gen-derived").unwrap();
    let mut image = ptr::null_mut();
    let s = unsafe { gdalg_verify_identity(bad.as_ptr(), gen.as_ptr(), target.as_ptr(), &mut image) };
    assert_eq!(s, GdalgStatus::Mismatch);
    assert_ne!(take(image), "0");

    let poly = CString::new("(circ (circ x1 x2) x3) - (circ x1 (circ x2 x3))").unwrap();
    let s = unsafe { gdalg_verify_identity(poly.as_ptr(), map.as_ptr(), ptr::null(), ptr::null_mut()) };
    assert_eq!(s, GdalgStatus::Mismatch);

    let garbage = CString::new("(circ x1").unwrap();
    let s = unsafe { gdalg_verify_identity(garbage.as_ptr(), map.as_ptr(), ptr::null(), ptr::null_mut()) };
    assert_eq!(s, GdalgStatus::Syntax);

    let s = unsafe { gdalg_verify_identity(ptr::null(), map.as_ptr(), ptr::null(), ptr::null_mut()) };
    assert_eq!(s, GdalgStatus::NullPointer);

    let bytes = [0xffu8, 0];
    let s = unsafe { gdalg_verify_identity(bytes.as_ptr().cast(), map.as_ptr(), ptr::null(), ptr::null_mut()) };
    assert_eq!(s, GdalgStatus::InvalidUtf8);
}

#[test]
fn presentations_and_membership() {
    let name = CString::new("gd").unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { gdalg_presentation_load(name.as_ptr(), &mut p) },
        GdalgStatus::Ok
    );
    let mut count = 0usize;
    assert_eq!(
        unsafe { gdalg_presentation_relation_count(p, &mut count) },
        GdalgStatus::Ok
    );
    assert!(count > 0);
    let dims: Vec<usize> = (1..=4)
        .map(|n| {
            let mut d = 0usize;
            assert_eq!(unsafe { gdalg_component_dim(p, n, &mut d) }, GdalgStatus::Ok);
            d
        })
        .collect();
    assert_eq!(dims, [1, 3, 17, 140]);

    let member = CString::new("gd1").unwrap();
    let mut report = ptr::null_mut();
    assert_eq!(
        unsafe { gdalg_membership(p, member.as_ptr(), 3, &mut report) },
        GdalgStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
    assert_eq!(v["member"], true);

    let special = CString::new("s-ident").unwrap();
    assert_eq!(
        unsafe { gdalg_membership(p, special.as_ptr(), 4, ptr::null_mut()) },
        GdalgStatus::Mismatch
    );
    unsafe { gdalg_presentation_free(p) };

    let missing = CString::new("no-such-operad").unwrap();
    let mut q = ptr::null_mut();
    assert_eq!(
        unsafe { gdalg_presentation_load(missing.as_ptr(), &mut q) },
        GdalgStatus::UnknownBuiltin
    );
    assert!(q.is_null());
    let mut d = 0usize;
    assert_eq!(
        unsafe { gdalg_component_dim(ptr::null(), 2, &mut d) },
        GdalgStatus::NullPointer
    );
    unsafe { gdalg_presentation_free(ptr::null_mut()) };
}

fn run(args: &[&str]) -> (GdalgStatus, c_int, Option<String>) {
    let owned: Vec<CString> = args.iter().map(|a| CString::new(*a).unwrap()).collect();
    let ptrs: Vec<*const c_char> = owned.iter().map(|c| c.as_ptr()).collect();
    let mut report = ptr::null_mut();
    let mut code: c_int = -1;
    let s = unsafe { gdalg_run(ptrs.len() as c_int, ptrs.as_ptr(), &mut report, &mut code) };
    let text = (!report.is_null()).then(|| take(report));
    (s, code, text)
}

#[test]
fn command_line_in_process() {
    let (s, code, text) = run(&["gdalg", "dim", "--operad", "sgd", "--range", "1..5"]);
    assert_eq!((s, code), (GdalgStatus::Ok, 0));
    let v: serde_json::Value = serde_json::from_str(&text.unwrap()).unwrap();
    assert_eq!(v["status"], "ok");
    assert_eq!(v["exit_code"], 0);

    let (s, code, _) = run(&["gdalg", "frobnicate"]);
    assert_eq!((s, code), (GdalgStatus::InvalidArgument, 2));
    assert!(!last_error().is_empty());

    let (a, _, ta) = run(&["gdalg", "check", "--name", "gd1", "--map", "gd"]);
    let (b, _, tb) = run(&["gdalg", "check", "--name", "gd1", "--map", "gd"]);
    assert_eq!((a, b), (GdalgStatus::Ok, GdalgStatus::Ok));
    assert_eq!(ta, tb);
}

#[test]
fn selftest_passes() {
    let (mut passed, mut total) = (0usize, 0usize);
    let mut report = ptr::null_mut();
    assert_eq!(
        unsafe { gdalg_selftest(false, &mut passed, &mut total, &mut report) },
        GdalgStatus::Ok
    );
    assert_eq!((passed, total), (10, 10));
    let v: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 10);
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(gdalg_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

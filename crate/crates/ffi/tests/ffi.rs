use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use tangentad_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(tad_last_error()) }.to_string_lossy().into_owned()
}

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { tad_string_free(s) };
    out
}

fn field(json: &str) -> *mut TadVectorField {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { tad_field_parse(c(json).as_ptr(), &mut f) }, TadStatus::Ok, "{}", last_error());
    f
}

const ONE: &str = r#"{"base": 1, "section": {"source_dim": 1, "target_dim": 2, "components": [[[1, 1, [1]]], [[1, 1, [0]]]]}}"#;
const X: &str = r#"{"base": 1, "section": {"source_dim": 1, "target_dim": 2, "components": [[[1, 1, [1]]], [[1, 1, [1]]]]}}"#;

#[test]
fn version_matches_the_crate() {
    let v = unsafe { CStr::from_ptr(tad_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn bracket_of_one_and_x() {
    let (u, v) = (field(ONE), field(X));
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { tad_field_bracket(u, v, &mut b) }, TadStatus::Ok);
    assert_eq!(take(unsafe { tad_field_principal(b) }), r#"["1"]"#);
    let round = field(&take(unsafe { tad_field_json(b) }));
    assert_eq!(take(unsafe { tad_field_principal(round) }), r#"["1"]"#);
    unsafe {
        tad_field_free(round);
        tad_field_free(b);
        tad_field_free(v);
        tad_field_free(u);
    }
}

#[test]
fn non_section_is_rejected() {
    let bad = r#"{"base": 1, "section": {"source_dim": 1, "target_dim": 2, "components": [[[2, 1, [1]]], [[1, 1, [0]]]]}}"#;
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { tad_field_parse(c(bad).as_ptr(), &mut f) }, TadStatus::InputError);
    assert!(f.is_null());
    assert!(!last_error().is_empty());
}

#[test]
fn malformed_json_is_an_input_error() {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { tad_field_parse(c("{").as_ptr(), &mut f) }, TadStatus::InputError);
    assert!(last_error().contains("parse"));
}

#[test]
fn null_arguments_are_reported() {
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { tad_run_suite(ptr::null(), 0, 0, ptr::null(), &mut r) }, TadStatus::NullPointer);
    assert_eq!(
        unsafe { tad_run_suite(c("weil").as_ptr(), 0, 0, ptr::null(), ptr::null_mut()) },
        TadStatus::NullPointer
    );
    assert_eq!(unsafe { tad_report_len(ptr::null()) }, 0);
    assert!(unsafe { tad_report_json(ptr::null()) }.is_null());
    unsafe {
        tad_report_free(ptr::null_mut());
        tad_field_free(ptr::null_mut());
        tad_string_free(ptr::null_mut());
    }
}

#[test]
fn suites_by_name() {
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { tad_run_suite(c("poly").as_ptr(), 7, 5, ptr::null(), &mut r) }, TadStatus::Ok);
    assert!(unsafe { tad_report_len(r) } > 0);
    let json: serde_json::Value = serde_json::from_str(&take(unsafe { tad_report_json(r) })).unwrap();
    assert!(json.as_array().unwrap().iter().all(|d| d["status"] == "pass"));
    unsafe { tad_report_free(r) };

    let mut r = ptr::null_mut();
    let status = unsafe { tad_run_suite(c("poly").as_ptr(), 7, 5, c("c-identity").as_ptr(), &mut r) };
    assert_eq!(status, TadStatus::CheckFailed);
    assert!(unsafe { tad_report_failures(r) } > 0);
    unsafe { tad_report_free(r) };

    let mut r = ptr::null_mut();
    assert_eq!(unsafe { tad_run_suite(c("nope").as_ptr(), 0, 0, ptr::null(), &mut r) }, TadStatus::InputError);
    assert!(r.is_null());
    assert!(last_error().contains("weil"));
}

fn discrete(n: usize) -> String {
    let morphisms: Vec<String> = (0..n).map(|i| format!(r#"{{"src": {i}, "dst": {i}}}"#)).collect();
    let rows: Vec<String> = (0..n)
        .map(|i| {
            let row: Vec<String> = (0..n).map(|j| if i == j { i.to_string() } else { "null".into() }).collect();
            format!("[{}]", row.join(", "))
        })
        .collect();
    let ids: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    format!(
        r#"{{"objects": {n}, "morphisms": [{}], "compose": [{}], "identities": [{}]}}"#,
        morphisms.join(", "),
        rows.join(", "),
        ids.join(", ")
    )
}

#[test]
fn category_checks_and_bounds() {
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { tad_check_category(c(&discrete(2)).as_ptr(), ptr::null(), &mut r) }, TadStatus::Ok);
    assert_eq!(unsafe { tad_report_failures(r) }, 0);
    unsafe { tad_report_free(r) };

    let six = c(&discrete(6));
    let mut r = ptr::null_mut();
    let status = unsafe { tad_check_category(six.as_ptr(), c("objects=5").as_ptr(), &mut r) };
    assert_eq!(status, TadStatus::BoundExceeded);
    assert!(r.is_null());
    let status = unsafe { tad_check_category(six.as_ptr(), c("objects=6").as_ptr(), &mut r) };
    assert_eq!(status, TadStatus::Ok, "{}", last_error());
    unsafe { tad_report_free(r) };
}

/// Directory holding `libtangentad_ffi.a` for this test build.
fn lib_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_header() {
    let dir = lib_dir();
    if !dir.join("libtangentad_ffi.a").exists() {
        panic!("static library not found in {}", dir.display());
    }
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let tmp = tempfile::tempdir().unwrap();
    let exe = tmp.path().join("smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(dir.join("libtangentad_ffi.a"))
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler runs");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("bracket [\"1\"]"));
}

use std::ffi::{c_char, CStr};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use weylext_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(weylext_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

fn take_string(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { weylext_string_free(p) };
    s
}

#[test]
fn matrix_handle_round_trip() {
    let mut m = ptr::null_mut();
    let st = unsafe { weylext_matrix_build(3, 3, WEYLEXT_SOURCE_CLOSED_FORM, &mut m) };
    assert_eq!(st, WeylextStatus::Ok);
    unsafe {
        assert_eq!(weylext_matrix_rows(m), 2);
        assert_eq!(weylext_matrix_cols(m), 5);
    }
    let expected = [[-2, 0, 0, 4, -2], [0, -2, -1, -1, -2]];
    for (r, row) in expected.iter().enumerate() {
        for (c, &x) in row.iter().enumerate() {
            let mut v = 0i64;
            assert_eq!(unsafe { weylext_matrix_entry(m, r, c, &mut v) }, WeylextStatus::Ok);
            assert_eq!(v, x);
        }
    }
    let mut v = 0;
    assert_eq!(unsafe { weylext_matrix_entry(m, 2, 0, &mut v) }, WeylextStatus::OutOfRange);
    assert!(last_error().contains("outside"));

    let mut js = ptr::null_mut();
    assert_eq!(unsafe { weylext_matrix_to_json(m, &mut js) }, WeylextStatus::Ok);
    let doc: serde_json::Value = serde_json::from_str(&take_string(js)).unwrap();
    assert_eq!(doc["rows"][0][3], "4");
    assert_eq!(doc["col_labels"][0], "v1");
    unsafe { weylext_matrix_free(m) };
}

#[test]
fn oracle_source_matches_closed_form() {
    let (mut x, mut y) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(weylext_matrix_build(4, 4, WEYLEXT_SOURCE_CLOSED_FORM, &mut x), WeylextStatus::Ok);
        assert_eq!(weylext_matrix_build(4, 4, WEYLEXT_SOURCE_ORACLE, &mut y), WeylextStatus::Ok);
        let (mut sx, mut sy) = (ptr::null_mut(), ptr::null_mut());
        weylext_matrix_to_json(x, &mut sx);
        weylext_matrix_to_json(y, &mut sy);
        assert_eq!(take_string(sx), take_string(sy));
        weylext_matrix_free(x);
        weylext_matrix_free(y);
    }
}

#[test]
fn error_codes() {
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(weylext_matrix_build(1, 4, 0, &mut m), WeylextStatus::InvalidParams);
        assert!(last_error().contains("a+1 > b-1"));
        assert!(m.is_null());
        assert_eq!(weylext_matrix_build(5, 4, 7, &mut m), WeylextStatus::InvalidParams);
        assert_eq!(weylext_matrix_build(5, 4, 0, ptr::null_mut()), WeylextStatus::NullPointer);
        assert_eq!(weylext_ext2_predict(5, 4, ptr::null_mut()), WeylextStatus::NullPointer);
        let mut v = 0;
        assert_eq!(weylext_matrix_entry(ptr::null(), 0, 0, &mut v), WeylextStatus::NullPointer);
        assert_eq!(weylext_matrix_rows(ptr::null()), 0);
        weylext_matrix_free(ptr::null_mut());
        weylext_string_free(ptr::null_mut());
    }
}

#[test]
fn ext2_orders() {
    let cases = [(3, 3, 2), (4, 3, 1), (8, 4, 6), (5, 4, 3), (4, 5, 3), (7, 5, 6), (7, 7, 2), (9, 2, 1)];
    for (a, b, n) in cases {
        let (mut p, mut c) = (0u64, 0u64);
        unsafe {
            assert_eq!(weylext_ext2_predict(a, b, &mut p), WeylextStatus::Ok);
            assert_eq!(weylext_ext2_compute(a, b, WEYLEXT_SOURCE_CLOSED_FORM, &mut c), WeylextStatus::Ok);
        }
        assert_eq!((p, c), (n, n), "a={a} b={b}");
    }
}

#[test]
fn pipeline_trace() {
    let mut js = ptr::null_mut();
    assert_eq!(unsafe { weylext_pipeline_run(7, 7, true, &mut js) }, WeylextStatus::Ok);
    let t: serde_json::Value = serde_json::from_str(&take_string(js)).unwrap();
    assert_eq!(t["r"], 29);
    assert_eq!(t["stages"].as_array().unwrap().len(), 11);
    assert_eq!(t["group"]["torsion_orders"][0], "2");
    assert_eq!(unsafe { weylext_pipeline_run(3, 2, false, &mut js) }, WeylextStatus::InvalidParams);
}

/// The static library built alongside this test, in target/<profile>/deps.
fn deps_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links_from_c() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = manifest.join("include/weylext.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in [
        "weylext_matrix_build",
        "weylext_matrix_entry",
        "weylext_matrix_to_json",
        "weylext_string_free",
        "weylext_matrix_free",
        "weylext_ext2_compute",
        "weylext_ext2_predict",
        "weylext_pipeline_run",
        "weylext_last_error_message",
    ] {
        assert!(text.contains(f), "{f} missing from header");
    }

    let lib = deps_dir().join("libweylext_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("t.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <string.h>
#include "weylext.h"
int main(void) {
    WeylextMatrix *m = NULL;
    if (weylext_matrix_build(3, 3, WEYLEXT_SOURCE_CLOSED_FORM, &m) != WEYLEXT_STATUS_OK) return 1;
    int64_t x = 0;
    if (weylext_matrix_entry(m, 0, 3, &x) != WEYLEXT_STATUS_OK || x != 4) return 2;
    weylext_matrix_free(m);
    uint64_t n = 0;
    if (weylext_ext2_compute(8, 4, WEYLEXT_SOURCE_CLOSED_FORM, &n) != WEYLEXT_STATUS_OK || n != 6) return 3;
    if (weylext_ext2_predict(1, 4, &n) != WEYLEXT_STATUS_INVALID_PARAMS) return 4;
    if (strlen(weylext_last_error_message()) == 0) return 5;
    printf("ok\n");
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("t");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler is required for this test");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}

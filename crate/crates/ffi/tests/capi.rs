use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use helitwist_ffi::*;

const DOUBLED: &str = r#"{"tets": 2, "gluings": [
    {"from": [0, 0], "to": [1, 0], "perm": [1, 2, 3]},
    {"from": [0, 1], "to": [1, 1], "perm": [0, 2, 3]},
    {"from": [0, 2], "to": [1, 2], "perm": [0, 1, 3]},
    {"from": [0, 3], "to": [1, 3], "perm": [0, 1, 2]}
]}"#;

fn surface_doc(twist: i32) -> CString {
    CString::new(format!(
        r#"{{"pieces": {{
            "0": {{"helicoids": ["helix(axis=[[0,1],[2,3]], twist={twist})"]}},
            "1": {{"helicoids": ["helix(axis=[[0,1],[2,3]], twist={twist})"]}}
        }}}}"#
    ))
    .unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ht_last_error()) }.to_string_lossy().into_owned()
}

fn doubled() -> *mut HtTriangulation {
    let doc = CString::new(DOUBLED).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { ht_triangulation_parse(doc.as_ptr(), &mut m) }, HtStatus::Ok);
    m
}

fn surface(m: *const HtTriangulation, twist: i32) -> *mut HtSurface {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { ht_surface_parse(m, surface_doc(twist).as_ptr(), &mut h) }, HtStatus::Ok);
    h
}

#[test]
fn triangulation_handles() {
    let m = doubled();
    unsafe {
        assert_eq!(ht_triangulation_tet_count(m), 2);
        assert_eq!(ht_triangulation_orientation(m, 0), -ht_triangulation_orientation(m, 1));
        assert_eq!(ht_triangulation_orientation(m, 5), 0);
        ht_triangulation_free(m);
        ht_triangulation_free(ptr::null_mut());
    }
}

#[test]
fn errors_set_status_and_message() {
    let mut m = ptr::null_mut();
    let bad = CString::new("{\"tets\": 2").unwrap();
    assert_eq!(unsafe { ht_triangulation_parse(bad.as_ptr(), &mut m) }, HtStatus::ParseError);
    assert!(m.is_null());
    assert!(!last_error().is_empty());

    let open = CString::new(r#"{"tets": 1, "gluings": []}"#).unwrap();
    assert_eq!(unsafe { ht_triangulation_parse(open.as_ptr(), &mut m) }, HtStatus::ValidationError);
    assert!(last_error().contains("not closed"), "{}", last_error());

    assert_eq!(unsafe { ht_triangulation_parse(ptr::null(), &mut m) }, HtStatus::NullArgument);

    let m = doubled();
    let mismatched = CString::new(
        r#"{"pieces": {"0": {"helicoids": ["helix(axis=[[0,1],[2,3]], twist=3)"]}}}"#,
    )
    .unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { ht_surface_parse(m, mismatched.as_ptr(), &mut h) }, HtStatus::ValidationError);
    assert!(h.is_null());

    let mut out = [0i64; 2];
    let delta = [0usize, 9];
    let h = surface(m, 1);
    assert_eq!(unsafe { ht_surface_net_range(m, h, delta.as_ptr(), 2, out.as_mut_ptr()) }, HtStatus::OutOfRange);
    unsafe {
        ht_surface_free(h);
        ht_triangulation_free(m);
    }
}

#[test]
fn twisting_queries() {
    let m = doubled();
    let (h, g) = (surface(m, 3), surface(m, 1));
    unsafe {
        let mut total = 0;
        assert_eq!(ht_surface_total_absolute_twisting(h, &mut total), HtStatus::Ok);
        assert_eq!(total, 6);

        let mut range = [0i64; 2];
        let delta = [0usize];
        assert_eq!(ht_surface_net_range(m, h, delta.as_ptr(), 1, range.as_mut_ptr()), HtStatus::Ok);
        assert_eq!(range, [3, 3]);

        let (mut consistent, mut net) = (false, [9i64; 2]);
        let both = [0usize, 1];
        assert_eq!(ht_surfaces_compare(m, h, g, both.as_ptr(), 2, &mut consistent, net.as_mut_ptr()), HtStatus::Ok);
        assert!(consistent);
        assert_eq!(net, [0, 0]);

        let mut json = ptr::null_mut();
        assert_eq!(ht_surface_report_json(m, h, &mut json), HtStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["totalAbsolute"], 6);
        ht_string_free(json);

        let mut classes = 0;
        assert_eq!(ht_count_consistency_classes(m, both.as_ptr(), 2, 4, &mut classes), HtStatus::Ok);
        assert_eq!(classes, 36);

        ht_surface_free(h);
        ht_surface_free(g);
        ht_triangulation_free(m);
    }
}

#[test]
fn curve_intersections() {
    // helicoid boundaries about one axis with twists 6 and 2
    let a = HtCurves { links: [0; 4], pairs: [7, 6, 1], copies: 1 };
    let b = HtCurves { links: [1, 0, 0, 0], pairs: [3, 2, 1], copies: 1 };
    let (mut eta, mut crossings) = (0, 0);
    assert_eq!(unsafe { ht_curves_eta(&a, &b, 1, &mut eta, &mut crossings) }, HtStatus::Ok);
    assert_eq!(crossings, 8);
    assert_eq!(eta.abs(), 8);

    let bad = HtCurves { links: [0; 4], pairs: [1, 1, 1], copies: 1 };
    assert_eq!(unsafe { ht_curves_eta(&a, &bad, 1, &mut eta, &mut crossings) }, HtStatus::ValidationError);
    assert_eq!(unsafe { ht_curves_eta(&a, &b, 0, &mut eta, &mut crossings) }, HtStatus::OutOfRange);
}

#[test]
fn header_compiles_as_c() {
    let header: PathBuf = [env!("CARGO_MANIFEST_DIR"), "include", "helitwist.h"].iter().collect();
    assert!(header.exists());
    let Ok(out) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(&header)
        .output()
    else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn c_program_links_against_the_static_library() {
    let exe = std::env::current_exe().unwrap();
    let lib_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let archive = lib_dir.join("libhelitwist_ffi.a");
    if !archive.exists() {
        eprintln!("{} not built; skipping", archive.display());
        return;
    }
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let bin = std::env::temp_dir().join(format!("helitwist-smoke-{}", std::process::id()));
    let Ok(status) = Command::new("cc")
        .arg(root.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(root.join("include"))
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
    else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    let _ = std::fs::remove_file(&bin);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}

use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use semap_ffi::*;

fn build(name: &str) -> *mut SemapMap {
    let name = CString::new(name).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { semap_catalog_build(name.as_ptr(), &mut m) }, SemapStatus::Ok);
    m
}

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { semap_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(semap_last_error_message()) }.to_str().unwrap().to_string()
}

#[test]
fn counts_types_and_names() {
    let m = build("snub-dodecahedron");
    let (mut f0, mut f1, mut f2) = (0, 0, 0);
    assert_eq!(unsafe { semap_map_counts(m, &mut f0, &mut f1, &mut f2) }, SemapStatus::Ok);
    assert_eq!((f0, f1, f2), (60, 150, 92));
    let mut chi = 0;
    assert_eq!(unsafe { semap_map_euler(m, &mut chi) }, SemapStatus::Ok);
    assert_eq!(chi, 2);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { semap_map_vertex_type(m, &mut s) }, SemapStatus::Ok);
    assert_eq!(take(s), "[3^4,5]");
    assert_eq!(unsafe { semap_identify(m, &mut s) }, SemapStatus::Ok);
    assert_eq!(take(s), "snub-dodecahedron");
    let mut order = 0;
    assert_eq!(unsafe { semap_automorphism_order(m, &mut order) }, SemapStatus::Ok);
    assert_eq!(order, 60);
    unsafe { semap_map_free(m) };
}

#[test]
fn text_round_trip_and_faces() {
    let m = build("cube");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { semap_map_to_text(m, &mut s) }, SemapStatus::Ok);
    let text = CString::new(take(s)).unwrap();
    let mut parsed = ptr::null_mut();
    assert_eq!(unsafe { semap_map_parse(text.as_ptr(), &mut parsed) }, SemapStatus::Ok);
    let sizes = [3usize, 3, 3, 3];
    let flat = [0usize, 1, 2, 0, 1, 3, 0, 2, 3, 1, 2, 3];
    let mut tetra = ptr::null_mut();
    assert_eq!(unsafe { semap_map_from_faces(sizes.as_ptr(), 4, flat.as_ptr(), &mut tetra) }, SemapStatus::Ok);
    let mut iso = false;
    assert_eq!(unsafe { semap_are_isomorphic(m, parsed, &mut iso) }, SemapStatus::Ok);
    assert!(iso);
    assert_eq!(unsafe { semap_are_isomorphic(m, tetra, &mut iso) }, SemapStatus::Ok);
    assert!(!iso);
    let mut vt = false;
    assert_eq!(unsafe { semap_is_vertex_transitive(tetra, &mut vt) }, SemapStatus::Ok);
    assert!(vt);
    unsafe {
        semap_map_free(m);
        semap_map_free(parsed);
        semap_map_free(tetra);
    }
}

#[test]
fn operators_and_errors() {
    let ico = build("icosahedron");
    let mut q = ptr::null_mut();
    assert_eq!(unsafe { semap_map_apply(ico, SemapOp::Quotient, &mut q) }, SemapStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { semap_identify(q, &mut s) }, SemapStatus::Ok);
    assert_eq!(take(s), "rp2-icosahedron");
    let mut cover = ptr::null_mut();
    assert_eq!(unsafe { semap_map_apply(q, SemapOp::DoubleCover, &mut cover) }, SemapStatus::Ok);
    let mut iso = false;
    assert_eq!(unsafe { semap_are_isomorphic(cover, ico, &mut iso) }, SemapStatus::Ok);
    assert!(iso);
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { semap_map_apply(ico, SemapOp::RemoveDeepBlue, &mut t) }, SemapStatus::WrongShape);
    assert!(last_error().starts_with("WrongShape"));
    assert_eq!(unsafe { semap_map_apply(ico, SemapOp::Truncate, &mut t) }, SemapStatus::Ok);
    assert!(last_error().is_empty());
    unsafe {
        semap_map_free(t);
        semap_map_free(cover);
        semap_map_free(q);
        semap_map_free(ico);
    }
}

#[test]
fn bad_input_is_reported() {
    let mut m = ptr::null_mut();
    let junk = CString::new("map 3\nf 0 1 2\n").unwrap();
    assert_eq!(unsafe { semap_map_parse(junk.as_ptr(), &mut m) }, SemapStatus::InvalidMap);
    let junk = CString::new("hello").unwrap();
    assert_eq!(unsafe { semap_map_parse(junk.as_ptr(), &mut m) }, SemapStatus::ParseError);
    assert_eq!(unsafe { semap_map_parse(ptr::null(), &mut m) }, SemapStatus::NullPointer);
    let name = CString::new("prism-1").unwrap();
    assert_eq!(unsafe { semap_catalog_build(name.as_ptr(), &mut m) }, SemapStatus::UnknownName);
    assert_eq!(unsafe { semap_map_counts(ptr::null(), ptr::null_mut(), ptr::null_mut(), ptr::null_mut()) }, SemapStatus::NullPointer);
    let cut = build("cuboctahedron");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { semap_map_apply(cut, SemapOp::Quotient, &mut m) }, SemapStatus::NonPolyhedralQuotient);
    let tetra = build("tetrahedron");
    assert_eq!(unsafe { semap_map_apply(tetra, SemapOp::Quotient, &mut m) }, SemapStatus::NotFreeInvolution);
    assert_eq!(unsafe { semap_map_vertex_type(cut, &mut s) }, SemapStatus::Ok);
    assert_eq!(take(s), "[3,4,3,4]");
    unsafe {
        semap_map_free(cut);
        semap_map_free(tetra);
        semap_map_free(ptr::null_mut());
        semap_string_free(ptr::null_mut());
    }
}

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// The directory holding `libsemap_ffi.a`, two levels above the test binary.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_is_current() {
    let header = std::fs::read_to_string(manifest_dir().join("include/semap.h")).unwrap();
    for name in ["semap_map_parse", "semap_map_apply", "semap_identify", "semap_last_error_message", "SEMAP_STATUS_OK"] {
        assert!(header.contains(name), "{name}");
    }
}

#[test]
fn c_program_links_against_static_library() {
    let lib = artifact_dir().join("libsemap_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!("skipping: no C compiler or no static library at {}", lib.display());
        return;
    }
    let out_dir = tempfile_dir();
    let exe = out_dir.join("smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest_dir().join("include"))
        .arg(manifest_dir().join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout), "ok\n");
    std::fs::remove_dir_all(out_dir).ok();
}

fn tempfile_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("semap-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

//! C interface to the semap engine.
//!
//! Maps are opaque `SemapMap` handles released with `semap_map_free`.
//! Every fallible function returns a `SemapStatus`; on failure a message is
//! available from `semap_last_error_message` on the same thread. Strings
//! handed out by the library are released with `semap_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use semap::catalog;
use semap::classify::{identify, identify_projective};
use semap::operators;
use semap::symmetry;
use semap::{parse_map, semi_equivelar_type, write_map, ParseError, PolyhedralMap};

/// Opaque map handle.
pub struct SemapMap(PolyhedralMap);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemapStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidMap = 4,
    UnknownName = 5,
    WrongShape = 6,
    NotSemiEquivelar = 7,
    NonPolyhedralQuotient = 8,
    NotFreeInvolution = 9,
    NotClassified = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemapOp {
    Truncate = 0,
    Rectify = 1,
    Dual = 2,
    RemoveDeepBlue = 3,
    InsertMatching = 4,
    Quotient = 5,
    DoubleCover = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

struct Failure(SemapStatus, String);

impl Failure {
    fn new(status: SemapStatus, message: impl std::fmt::Display) -> Self {
        Failure(status, message.to_string())
    }
}

fn guarded(body: impl FnOnce() -> Result<(), Failure>) -> SemapStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            SemapStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SemapStatus::Panic
        }
    }
}

unsafe fn utf8<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(SemapStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure::new(SemapStatus::InvalidUtf8, e))
}

unsafe fn handle<'a>(p: *const SemapMap) -> Result<&'a PolyhedralMap, Failure> {
    p.as_ref().map(|m| &m.0).ok_or_else(|| Failure::new(SemapStatus::NullPointer, "null map"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(SemapStatus::NullPointer, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_map(out: *mut *mut SemapMap, m: PolyhedralMap) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(SemapStatus::NullPointer, "null output pointer"));
    }
    out.write(Box::into_raw(Box::new(SemapMap(m))));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure::new(SemapStatus::InvalidUtf8, e))?;
    put(out, c.into_raw())
}

fn status_of(kind: &str) -> SemapStatus {
    match kind {
        "UnknownName" | "NTooSmall" | "MaxGonTooSmall" => SemapStatus::UnknownName,
        "NonPolyhedralQuotient" => SemapStatus::NonPolyhedralQuotient,
        "NotFreeInvolution" => SemapStatus::NotFreeInvolution,
        "NotSemiEquivelar" => SemapStatus::NotSemiEquivelar,
        "MissingHeader" | "Syntax" | "NoFaces" => SemapStatus::ParseError,
        "ClassificationViolation" | "WrongSphere" | "WrongProjectivePlane" => SemapStatus::NotClassified,
        "Map" | "Invalid" | "Empty" | "FaceTooSmall" | "VertexOutOfRange" | "UnusedVertex" | "RepeatedVertexInFace"
        | "EdgeDegreeNotTwo" | "NonPolyhedralIntersection" | "PinchedVertex" | "Disconnected" | "UnsupportedSurface" => {
            SemapStatus::InvalidMap
        }
        _ => SemapStatus::WrongShape,
    }
}

macro_rules! domain {
    ($e:expr) => {{
        let e = $e;
        Failure(status_of(e.kind()), format!("{}: {}", e.kind(), e))
    }};
}

/// Parses the text format (`map N` then `f v1 v2 ...` lines).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn semap_map_parse(text: *const c_char, out: *mut *mut SemapMap) -> SemapStatus {
    guarded(|| {
        let m = parse_map(utf8(text)?).map_err(|e| {
            let status = if matches!(e, ParseError::Invalid(_)) { SemapStatus::InvalidMap } else { SemapStatus::ParseError };
            Failure::new(status, format!("{}: {e}", e.kind()))
        })?;
        put_map(out, m)
    })
}

/// Builds a map from `face_count` faces: face `i` has `sizes[i]` vertices,
/// read consecutively from `vertices`.
///
/// # Safety
/// `sizes` must hold `face_count` entries and `vertices` their sum.
#[no_mangle]
pub unsafe extern "C" fn semap_map_from_faces(
    sizes: *const usize,
    face_count: usize,
    vertices: *const usize,
    out: *mut *mut SemapMap,
) -> SemapStatus {
    guarded(|| {
        if sizes.is_null() || vertices.is_null() {
            return Err(Failure::new(SemapStatus::NullPointer, "null array"));
        }
        let sizes = std::slice::from_raw_parts(sizes, face_count);
        let total = sizes.iter().sum();
        let flat = std::slice::from_raw_parts(vertices, total);
        let mut faces = Vec::with_capacity(face_count);
        let mut at = 0;
        for &k in sizes {
            faces.push(flat[at..at + k].to_vec());
            at += k;
        }
        let m = PolyhedralMap::from_faces(faces).map_err(|e| domain!(e))?;
        put_map(out, m)
    })
}

/// Builds a named catalog map such as `snub-cube`, `prism-7` or
/// `rp2-icosahedron`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn semap_catalog_build(name: *const c_char, out: *mut *mut SemapMap) -> SemapStatus {
    guarded(|| {
        let entry = catalog::build(utf8(name)?).map_err(|e| domain!(e))?;
        put_map(out, entry.map)
    })
}

/// Releases a map. Null is ignored.
///
/// # Safety
/// `m` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn semap_map_free(m: *mut SemapMap) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Vertex, edge and face counts.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn semap_map_counts(
    m: *const SemapMap,
    f0: *mut usize,
    f1: *mut usize,
    f2: *mut usize,
) -> SemapStatus {
    guarded(|| {
        let m = handle(m)?;
        put(f0, m.vertex_count())?;
        put(f1, m.edge_count())?;
        put(f2, m.face_count())
    })
}

/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn semap_map_euler(m: *const SemapMap, out: *mut i64) -> SemapStatus {
    guarded(|| put(out, handle(m)?.euler_characteristic()))
}

/// The common vertex type, e.g. `[3^4,5]`.
///
/// # Safety
/// All pointers must be valid; free the string with `semap_string_free`.
#[no_mangle]
pub unsafe extern "C" fn semap_map_vertex_type(m: *const SemapMap, out: *mut *mut c_char) -> SemapStatus {
    guarded(|| {
        let t = semi_equivelar_type(handle(m)?).map_err(|e| Failure::new(SemapStatus::NotSemiEquivelar, e))?;
        put_string(out, t.to_string())
    })
}

/// The map in text format.
///
/// # Safety
/// All pointers must be valid; free the string with `semap_string_free`.
#[no_mangle]
pub unsafe extern "C" fn semap_map_to_text(m: *const SemapMap, out: *mut *mut c_char) -> SemapStatus {
    guarded(|| put_string(out, write_map(handle(m)?)))
}

/// Applies an operator. `quotient` uses the first free involution found;
/// `insert_matching` starts from the least eligible diagonal.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn semap_map_apply(m: *const SemapMap, op: SemapOp, out: *mut *mut SemapMap) -> SemapStatus {
    guarded(|| {
        let x = handle(m)?;
        let y = match op {
            SemapOp::Truncate => operators::truncate(x).map_err(|e| domain!(e))?,
            SemapOp::Rectify => operators::rectify(x).map_err(|e| domain!(e))?,
            SemapOp::Dual => operators::dual(x).map_err(|e| domain!(e))?,
            SemapOp::RemoveDeepBlue => operators::remove_deep_blue(x).map_err(|e| domain!(e))?,
            SemapOp::InsertMatching => {
                let seed = operators::canonical_seed(x)
                    .ok_or_else(|| Failure::new(SemapStatus::WrongShape, "no eligible square"))?;
                operators::insert_diagonal_matching(x, seed).map_err(|e| domain!(e))?
            }
            SemapOp::Quotient => {
                let sigma = symmetry::free_involutions(x)
                    .into_iter()
                    .next()
                    .ok_or_else(|| Failure::new(SemapStatus::NotFreeInvolution, "no free involution"))?;
                symmetry::quotient(x, &sigma).map_err(|e| domain!(e))?
            }
            SemapOp::DoubleCover => symmetry::double_cover(x).map_err(|e| domain!(e))?.0,
        };
        put_map(out, y)
    })
}

/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn semap_are_isomorphic(a: *const SemapMap, b: *const SemapMap, out: *mut bool) -> SemapStatus {
    guarded(|| put(out, symmetry::are_isomorphic(handle(a)?, handle(b)?)))
}

/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn semap_automorphism_order(m: *const SemapMap, out: *mut usize) -> SemapStatus {
    guarded(|| put(out, symmetry::automorphism_group(handle(m)?).order()))
}

/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn semap_is_vertex_transitive(m: *const SemapMap, out: *mut bool) -> SemapStatus {
    guarded(|| put(out, symmetry::is_vertex_transitive(handle(m)?)))
}

/// Catalog name of a semi-equivelar map on the sphere or the projective
/// plane.
///
/// # Safety
/// All pointers must be valid; free the string with `semap_string_free`.
#[no_mangle]
pub unsafe extern "C" fn semap_identify(m: *const SemapMap, out: *mut *mut c_char) -> SemapStatus {
    guarded(|| {
        let m = handle(m)?;
        let verdict = if m.euler_characteristic() == 1 { identify_projective(m) } else { identify(m) };
        put_string(out, verdict.map_err(|e| domain!(e))?.name)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn semap_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, empty after a success.
/// Valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn semap_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}


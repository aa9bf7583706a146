//! C interface to helitwist.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `_free` function. Every fallible call returns
//! an [`HtStatus`]; on failure [`ht_last_error`] describes what went wrong.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use helitwist::intersection;
use helitwist::surfaces::{
    check_matching, compare, count_consistency_classes, net_twisting_range, total_absolute_twisting,
    validate_surface, LocallyHelicalSurface, Subcomplex,
};
use helitwist::{ClosedTriangulation, CurveSystem, LongLoop, Sign, Triangulation};

/// Result of a call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HtStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ValidationError = 4,
    OutOfRange = 5,
    Overflow = 6,
    Panic = 7,
}

/// A closed oriented triangulation.
pub struct HtTriangulation(ClosedTriangulation);

/// A locally helical surface, checked against the triangulation it was
/// parsed for.
pub struct HtSurface(LocallyHelicalSurface);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let mut bytes = msg.into().into_bytes();
    bytes.retain(|&b| b != 0);
    let c = CString::new(bytes).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: HtStatus, msg: impl Into<String>) -> HtStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning a panic into [`HtStatus::Panic`].
fn guard(f: impl FnOnce() -> HtStatus) -> HtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(HtStatus::Panic, "internal error"),
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, HtStatus> {
    if p.is_null() {
        return Err(fail(HtStatus::NullArgument, "null string"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| fail(HtStatus::InvalidUtf8, e.to_string()))
}

unsafe fn subcomplex(m: &ClosedTriangulation, tets: *const usize, len: usize) -> Result<Subcomplex, HtStatus> {
    if len == 0 {
        return Ok(Subcomplex::default());
    }
    if tets.is_null() {
        return Err(fail(HtStatus::NullArgument, "null tetrahedron list"));
    }
    let slice = std::slice::from_raw_parts(tets, len);
    if let Some(t) = slice.iter().find(|&&t| t >= m.tet_count()) {
        return Err(fail(HtStatus::OutOfRange, format!("tetrahedron {t} out of range")));
    }
    Ok(Subcomplex::from_tets(slice.iter().copied()))
}

macro_rules! check_ptr {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(HtStatus::NullArgument, concat!("null argument `", stringify!($p), "`"));
        })+
    };
}

macro_rules! tri_ok {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Message for the last failed call on this thread, or the empty string.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ht_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a triangulation document and checks it is closed and oriented.
///
/// # Safety
/// `doc` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_triangulation_parse(doc: *const c_char, out: *mut *mut HtTriangulation) -> HtStatus {
    guard(|| {
        check_ptr!(out);
        *out = ptr::null_mut();
        let doc = tri_ok!(text(doc));
        let tri = match Triangulation::parse(doc) {
            Ok(t) => t,
            Err(e) => return fail(HtStatus::ParseError, e.to_string()),
        };
        match ClosedTriangulation::new(tri) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(HtTriangulation(m)));
                HtStatus::Ok
            }
            Err(e) => fail(HtStatus::ValidationError, e.to_string()),
        }
    })
}

/// Number of tetrahedra, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ht_triangulation_tet_count(m: *const HtTriangulation) -> usize {
    m.as_ref().map_or(0, |m| m.0.tet_count())
}

/// Orientation of tetrahedron `tet` as +1 or -1, or 0 if out of range.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ht_triangulation_orientation(m: *const HtTriangulation, tet: usize) -> c_int {
    match m.as_ref() {
        Some(m) if tet < m.0.tet_count() => match m.0.orientation(tet) {
            Sign::Pos => 1,
            Sign::Neg => -1,
        },
        _ => 0,
    }
}

/// # Safety
/// `m` must be null or a handle from [`ht_triangulation_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ht_triangulation_free(m: *mut HtTriangulation) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Parses a surface document and checks it matches across every gluing of
/// `m`.
///
/// # Safety
/// `m` must be a live handle, `doc` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ht_surface_parse(
    m: *const HtTriangulation,
    doc: *const c_char,
    out: *mut *mut HtSurface,
) -> HtStatus {
    guard(|| {
        check_ptr!(m, out);
        *out = ptr::null_mut();
        let doc = tri_ok!(text(doc));
        let h = match LocallyHelicalSurface::parse(doc) {
            Ok(h) => h,
            Err(e) => return fail(HtStatus::ParseError, e.to_string()),
        };
        if let Some(t) = h.tets().find(|&t| t >= (*m).0.tet_count()) {
            return fail(HtStatus::OutOfRange, format!("surface names tetrahedron {t}"));
        }
        if let Err(e) = check_matching(&(*m).0, &h) {
            return fail(HtStatus::ValidationError, e.to_string());
        }
        *out = Box::into_raw(Box::new(HtSurface(h)));
        HtStatus::Ok
    })
}

/// # Safety
/// `h` must be null or a handle from [`ht_surface_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ht_surface_free(h: *mut HtSurface) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Sum of the absolute twists of all helicoids of `h`.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ht_surface_total_absolute_twisting(h: *const HtSurface, out: *mut u64) -> HtStatus {
    guard(|| {
        check_ptr!(h, out);
        let h = &(*h).0;
        let all = Subcomplex::from_tets(h.tets());
        *out = total_absolute_twisting(h, &all);
        HtStatus::Ok
    })
}

/// Smallest and largest net twisting of `h` over the tetrahedra listed in
/// `delta`, across all axis choices.
///
/// # Safety
/// Handles must be live, `delta` must point to `delta_len` indices (or be
/// null with `delta_len` 0), and `out` must have room for two values.
#[no_mangle]
pub unsafe extern "C" fn ht_surface_net_range(
    m: *const HtTriangulation,
    h: *const HtSurface,
    delta: *const usize,
    delta_len: usize,
    out: *mut i64,
) -> HtStatus {
    guard(|| {
        check_ptr!(m, h, out);
        let d = tri_ok!(subcomplex(&(*m).0, delta, delta_len));
        let [lo, hi] = net_twisting_range(&(*m).0, &(*h).0, &d);
        *out = lo;
        *out.add(1) = hi;
        HtStatus::Ok
    })
}

/// The full twisting report of `h` as JSON. Free the string with
/// [`ht_string_free`].
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ht_surface_report_json(
    m: *const HtTriangulation,
    h: *const HtSurface,
    out: *mut *mut c_char,
) -> HtStatus {
    guard(|| {
        check_ptr!(m, h, out);
        *out = ptr::null_mut();
        let report = match validate_surface(&(*m).0, &(*h).0, None) {
            Ok(r) => r,
            Err(e) => return fail(HtStatus::ValidationError, e.to_string()),
        };
        let json = serde_json::to_string(&report).expect("reports serialize");
        *out = CString::new(json).expect("json has no nul").into_raw();
        HtStatus::Ok
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ht_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Whether `h` and `g` are consistent over `delta`; when they are, their
/// net twisting under the shared readings goes to `net[0]` and `net[1]`.
///
/// # Safety
/// Handles must be live; `delta` as for [`ht_surface_net_range`];
/// `consistent` writable and `net` room for two values.
#[no_mangle]
pub unsafe extern "C" fn ht_surfaces_compare(
    m: *const HtTriangulation,
    h: *const HtSurface,
    g: *const HtSurface,
    delta: *const usize,
    delta_len: usize,
    consistent: *mut bool,
    net: *mut i64,
) -> HtStatus {
    guard(|| {
        check_ptr!(m, h, g, consistent, net);
        let d = tri_ok!(subcomplex(&(*m).0, delta, delta_len));
        let c = compare(&(*m).0, &(*h).0, &(*g).0, &d);
        *consistent = c.consistent();
        if let Some([a, b]) = c.net {
            *net = a;
            *net.add(1) = b;
        }
        HtStatus::Ok
    })
}

/// Upper bound on the consistency classes of surfaces on `m` whose
/// helicoids twist at most `max_twist`, with a helicoid in every tetrahedron
/// of `delta`.
///
/// # Safety
/// As for [`ht_surface_net_range`]; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ht_count_consistency_classes(
    m: *const HtTriangulation,
    delta: *const usize,
    delta_len: usize,
    max_twist: u32,
    out: *mut u64,
) -> HtStatus {
    guard(|| {
        check_ptr!(m, out);
        let d = tri_ok!(subcomplex(&(*m).0, delta, delta_len));
        match u64::try_from(count_consistency_classes(&(*m).0, &d, max_twist)) {
            Ok(n) => {
                *out = n;
                HtStatus::Ok
            }
            Err(_) => fail(HtStatus::Overflow, "class count exceeds 64 bits"),
        }
    })
}

/// A curve system on a tetrahedron boundary: vertex link counts, and
/// `copies` parallel copies of the long loop with the given pair weights
/// (ignored when `copies` is 0).
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct HtCurves {
    pub links: [u32; 4],
    pub pairs: [u32; 3],
    pub copies: u32,
}

fn curves(c: &HtCurves) -> Result<CurveSystem, HtStatus> {
    let long = if c.copies == 0 {
        None
    } else {
        let l = LongLoop::from_pairs(c.pairs).map_err(|e| fail(HtStatus::ValidationError, e.to_string()))?;
        Some((l, c.copies))
    };
    Ok(CurveSystem::new(c.links, long))
}

/// Signed crossing count and number of crossings of `a` and `b` in minimal
/// position on a tetrahedron of orientation `orientation` (+1 or -1).
///
/// # Safety
/// `a` and `b` must be readable; `eta` and `crossings` writable.
#[no_mangle]
pub unsafe extern "C" fn ht_curves_eta(
    a: *const HtCurves,
    b: *const HtCurves,
    orientation: c_int,
    eta: *mut i64,
    crossings: *mut u64,
) -> HtStatus {
    guard(|| {
        check_ptr!(a, b, eta, crossings);
        let o = match orientation {
            1 => Sign::Pos,
            -1 => Sign::Neg,
            _ => return fail(HtStatus::OutOfRange, "orientation must be +1 or -1"),
        };
        let (a, b) = (tri_ok!(curves(&*a)), tri_ok!(curves(&*b)));
        let real = intersection::realize_minimal(&a, &b, o);
        *eta = real.eta();
        *crossings = real.crossing_count() as u64;
        HtStatus::Ok
    })
}

//! C ABI for `trop-core`.
//!
//! Objects are opaque heap handles released with their `_free` function.
//! Every fallible call returns a [`TropStatus`]; on failure the message is
//! available from [`trop_last_error`] on the same thread. Strings returned
//! through `char **` out-parameters are owned by the caller and released with
//! [`trop_string_free`]. Rationals and points cross the boundary as text:
//! `"n/d"` and `"x,y"`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use trop_core::elliptic::{extract_cycle, parse_divisor, CycleModel, CyclePoint};
use trop_core::exact::{fmt_rational, parse_point, Point2};
use trop_core::intersect::{stable_intersection, transversal_intersections};
use trop_core::svg::{render, Overlays, Viewport};
use trop_core::{build_curve, doc::CurveModel, TropError, TropicalCurve, TropicalPolynomial};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TropStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    EmptyVariety = 4,
    NotTransversal = 5,
    NotElliptic = 6,
    NotOnCycle = 7,
    NotOnCurve = 8,
    Domain = 9,
    Panic = 10,
}

/// A parsed tropical polynomial.
pub struct TropPoly {
    inner: TropicalPolynomial,
}

/// A tropical plane curve.
pub struct TropCurve {
    inner: TropicalCurve,
    source: String,
}

/// The cycle of an elliptic curve with a base point.
pub struct TropCycle {
    inner: CycleModel,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &TropError) -> TropStatus {
    match e {
        TropError::Syntax { .. }
        | TropError::EmptyInput
        | TropError::MixedArity(_)
        | TropError::InvalidRational(_)
        | TropError::DegreeTooSmall { .. } => TropStatus::Syntax,
        TropError::EmptyVariety => TropStatus::EmptyVariety,
        TropError::NotTransversal => TropStatus::NotTransversal,
        TropError::NotElliptic(_) => TropStatus::NotElliptic,
        TropError::NotOnCycle => TropStatus::NotOnCycle,
        TropError::NotOnCurve => TropStatus::NotOnCurve,
        _ => TropStatus::Domain,
    }
}

struct Fail(TropStatus, String);

impl From<TropError> for Fail {
    fn from(e: TropError) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> TropStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            TropStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TropStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(TropStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(TropStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(TropStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(TropStatus::NullPointer, "null out-pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(TropStatus::Domain, "interior nul".into()))?;
    put(out, c.into_raw())
}

fn point_text(p: &Point2) -> String {
    format!("{},{}", fmt_rational(&p.x), fmt_rational(&p.y))
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn trop_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn trop_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trop_poly_parse(text: *const c_char, out: *mut *mut TropPoly) -> TropStatus {
    guard(|| {
        let f = TropicalPolynomial::parse(read_str(text)?)?;
        put(out, Box::into_raw(Box::new(TropPoly { inner: f })))
    })
}

/// Normalized text of the polynomial.
///
/// # Safety
/// `poly` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trop_poly_to_string(poly: *const TropPoly, out: *mut *mut c_char) -> TropStatus {
    guard(|| put_string(out, deref(poly)?.inner.to_string()))
}

/// # Safety
/// `poly` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn trop_poly_free(poly: *mut TropPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// # Safety
/// `poly` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trop_curve_new(poly: *const TropPoly, out: *mut *mut TropCurve) -> TropStatus {
    guard(|| {
        let f = &deref(poly)?.inner;
        let c = build_curve(f)?;
        put(out, Box::into_raw(Box::new(TropCurve { inner: c, source: f.to_string() })))
    })
}

/// Parses and builds in one step.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trop_curve_from_text(text: *const c_char, out: *mut *mut TropCurve) -> TropStatus {
    guard(|| {
        let src = read_str(text)?;
        let c = build_curve(&TropicalPolynomial::parse(src)?)?;
        put(out, Box::into_raw(Box::new(TropCurve { inner: c, source: src.to_string() })))
    })
}

/// # Safety
/// `curve` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn trop_curve_free(curve: *mut TropCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Normalized degree of the Newton polygon.
///
/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trop_curve_degree(curve: *const TropCurve, out: *mut i64) -> TropStatus {
    guard(|| put(out, deref(curve)?.inner.degree()))
}

/// Counts of vertices, bounded edges and rays.
///
/// # Safety
/// `curve` must be a live handle; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn trop_curve_counts(
    curve: *const TropCurve,
    vertices: *mut usize,
    bounded_edges: *mut usize,
    rays: *mut usize,
) -> TropStatus {
    guard(|| {
        let c = &deref(curve)?.inner;
        put(vertices, c.vertices.len())?;
        put(bounded_edges, c.bounded_edges.len())?;
        put(rays, c.rays.len())
    })
}

/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trop_curve_is_smooth(curve: *const TropCurve, out: *mut bool) -> TropStatus {
    guard(|| put(out, deref(curve)?.inner.is_smooth()))
}

/// Genus of a smooth curve; fails with `Domain` otherwise.
///
/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trop_curve_genus(curve: *const TropCurve, out: *mut usize) -> TropStatus {
    guard(|| put(out, deref(curve)?.inner.genus()?))
}

/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trop_curve_is_balanced(curve: *const TropCurve, out: *mut bool) -> TropStatus {
    guard(|| put(out, deref(curve)?.inner.check_balancing()))
}

/// `tropcurve-1` JSON document, with the subdivision if `with_subdivision`.
///
/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trop_curve_to_json(
    curve: *const TropCurve,
    with_subdivision: bool,
    out: *mut *mut c_char,
) -> TropStatus {
    guard(|| {
        let c = deref(curve)?;
        let model = CurveModel {
            source: c.source.clone(),
            curve: c.inner.clone(),
            with_subdivision,
            cycle: extract_cycle(&c.inner).ok(),
        };
        put_string(out, model.to_json())
    })
}

/// SVG of the curve in its default viewport.
///
/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trop_curve_to_svg(curve: *const TropCurve, out: *mut *mut c_char) -> TropStatus {
    guard(|| {
        let c = &deref(curve)?.inner;
        let cycle = extract_cycle(c).ok();
        let overlays = Overlays { cycle: cycle.as_ref(), ..Default::default() };
        put_string(out, render(c, &Viewport::for_curve(c), &overlays))
    })
}

/// Intersection as JSON (`entries` of point and multiplicity, and `total`).
/// Stable when `stable`, otherwise transversal (fails with `NotTransversal`).
///
/// # Safety
/// Both curves must be live handles; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn trop_intersect(
    a: *const TropCurve,
    b: *const TropCurve,
    stable: bool,
    total: *mut i64,
    json: *mut *mut c_char,
) -> TropStatus {
    guard(|| {
        let (a, b) = (&deref(a)?.inner, &deref(b)?.inner);
        let meet = if stable { stable_intersection(a, b) } else { transversal_intersections(a, b)? };
        put(total, meet.total)?;
        put_string(json, serde_json::to_string(&meet).expect("json"))
    })
}

/// Cycle of an elliptic curve, based at its lowest-leftmost vertex.
///
/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trop_cycle_new(curve: *const TropCurve, out: *mut *mut TropCycle) -> TropStatus {
    guard(|| {
        let m = extract_cycle(&deref(curve)?.inner)?;
        put(out, Box::into_raw(Box::new(TropCycle { inner: m })))
    })
}

/// # Safety
/// `cycle` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn trop_cycle_free(cycle: *mut TropCycle) {
    if !cycle.is_null() {
        drop(Box::from_raw(cycle));
    }
}

/// Moves the base point to `origin` ("x,y").
///
/// # Safety
/// `cycle` must be a live, exclusively held handle; `origin` a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn trop_cycle_set_origin(cycle: *mut TropCycle, origin: *const c_char) -> TropStatus {
    guard(|| {
        let o = parse_point(read_str(origin)?)?;
        let c = cycle
            .as_mut()
            .ok_or_else(|| Fail(TropStatus::NullPointer, "null handle".into()))?;
        c.inner = c.inner.set_origin(&o)?;
        Ok(())
    })
}

/// Total lattice length as `"n/d"`.
///
/// # Safety
/// `cycle` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trop_cycle_length(cycle: *const TropCycle, out: *mut *mut c_char) -> TropStatus {
    guard(|| put_string(out, fmt_rational(&deref(cycle)?.inner.total_length)))
}

unsafe fn cycle_point(m: &CycleModel, p: *const c_char) -> Result<CyclePoint, Fail> {
    let text = read_str(p)?;
    if text.trim() == "O" {
        return Ok(m.origin.clone());
    }
    Ok(m.locate(&parse_point(text)?).ok_or(TropError::NotOnCycle)?)
}

/// `lambda(P)` as `"n/d"`.
///
/// # Safety
/// `cycle` must be a live handle; `p` a nul-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn trop_cycle_lambda(
    cycle: *const TropCycle,
    p: *const c_char,
    out: *mut *mut c_char,
) -> TropStatus {
    guard(|| {
        let m = &deref(cycle)?.inner;
        let p = cycle_point(m, p)?;
        put_string(out, fmt_rational(&m.lambda(&p)))
    })
}

/// `P + Q` as `"x,y"`.
///
/// # Safety
/// `cycle` must be a live handle; `p`, `q` nul-terminated strings; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn trop_cycle_add(
    cycle: *const TropCycle,
    p: *const c_char,
    q: *const c_char,
    out: *mut *mut c_char,
) -> TropStatus {
    guard(|| {
        let m = &deref(cycle)?.inner;
        let (p, q) = (cycle_point(m, p)?, cycle_point(m, q)?);
        put_string(out, point_text(&m.embed(&m.group_add(&p, &q))))
    })
}

/// `-P` as `"x,y"`.
///
/// # Safety
/// `cycle` must be a live handle; `p` a nul-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn trop_cycle_neg(
    cycle: *const TropCycle,
    p: *const c_char,
    out: *mut *mut c_char,
) -> TropStatus {
    guard(|| {
        let m = &deref(cycle)?.inner;
        let p = cycle_point(m, p)?;
        put_string(out, point_text(&m.embed(&m.group_neg(&p))))
    })
}

/// Reduces a degree-0 divisor such as `"(1,2)+(3,4)-2*O"` to `P` with `D ~ P - O`.
///
/// # Safety
/// `cycle` must be a live handle; `divisor` a nul-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn trop_cycle_reduce(
    cycle: *const TropCycle,
    divisor: *const c_char,
    out: *mut *mut c_char,
) -> TropStatus {
    guard(|| {
        let m = &deref(cycle)?.inner;
        let d = parse_divisor(read_str(divisor)?, &m.origin_point())?;
        put_string(out, point_text(&m.embed(&m.reduce_divisor(&d)?)))
    })
}

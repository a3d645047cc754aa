use std::ffi::{c_char, CStr, CString};
use std::ptr;

use trop_ffi::*;

fn text(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { trop_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(trop_last_error()) }.to_str().unwrap().to_string()
}

fn curve(src: &str) -> *mut TropCurve {
    let src = CString::new(src).unwrap();
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { trop_curve_from_text(src.as_ptr(), &mut c) }, TropStatus::Ok);
    c
}

const CUBIC: &str = "0 + (-1)*x + (-4)*x^2 + (-9)*x^3 + (-1)*y + (-3)*x*y + (-7)*x^2*y + (-4)*y^2 + (-7)*x*y^2 + (-9)*y^3";

#[test]
fn parse_round_trip_and_errors() {
    let src = CString::new("x^2 + y + 0").unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { trop_poly_parse(src.as_ptr(), &mut p) }, TropStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { trop_poly_to_string(p, &mut s) }, TropStatus::Ok);
    assert_eq!(text(s), "0 + y + x^2");
    unsafe { trop_poly_free(p) };

    let bad = CString::new("0++x").unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { trop_poly_parse(bad.as_ptr(), &mut p) }, TropStatus::Syntax);
    assert!(p.is_null());
    assert!(last_error().contains("position 2"));
}

#[test]
fn null_arguments_are_reported() {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { trop_poly_parse(ptr::null(), &mut p) }, TropStatus::NullPointer);
    let c = curve("0 + x + y");
    assert_eq!(unsafe { trop_curve_degree(c, ptr::null_mut()) }, TropStatus::NullPointer);
    let mut d = 0;
    assert_eq!(unsafe { trop_curve_degree(ptr::null(), &mut d) }, TropStatus::NullPointer);
    unsafe { trop_curve_free(c) };
    unsafe { trop_curve_free(ptr::null_mut()) };
}

#[test]
fn curve_queries() {
    let c = curve("0 + x + y");
    let (mut v, mut e, mut r) = (0usize, 0usize, 0usize);
    assert_eq!(unsafe { trop_curve_counts(c, &mut v, &mut e, &mut r) }, TropStatus::Ok);
    assert_eq!((v, e, r), (1, 0, 3));
    let mut smooth = false;
    assert_eq!(unsafe { trop_curve_is_smooth(c, &mut smooth) }, TropStatus::Ok);
    assert!(smooth);
    let mut g = 9usize;
    assert_eq!(unsafe { trop_curve_genus(c, &mut g) }, TropStatus::Ok);
    assert_eq!(g, 0);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { trop_curve_to_json(c, true, &mut json) }, TropStatus::Ok);
    assert!(text(json).contains("tropcurve-1"));
    let mut svg = ptr::null_mut();
    assert_eq!(unsafe { trop_curve_to_svg(c, &mut svg) }, TropStatus::Ok);
    assert!(text(svg).starts_with("<svg"));
    unsafe { trop_curve_free(c) };

    let src = CString::new("x^3*y").unwrap();
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { trop_curve_from_text(src.as_ptr(), &mut c) }, TropStatus::EmptyVariety);
}

#[test]
fn intersections() {
    let (a, b) = (curve("x^2 + y"), curve("x + y^2"));
    let mut total = 0;
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { trop_intersect(a, b, true, &mut total, &mut json) }, TropStatus::Ok);
    assert_eq!(total, 3);
    assert!(text(json).contains("\"multiplicity\":3"));
    let l = curve("0 + x + y");
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { trop_intersect(l, l, false, &mut total, &mut json) }, TropStatus::NotTransversal);
    assert_eq!(unsafe { trop_intersect(l, l, true, &mut total, &mut json) }, TropStatus::Ok);
    assert_eq!(total, 1);
    unsafe { trop_string_free(json) };
    for c in [a, b, l] {
        unsafe { trop_curve_free(c) };
    }
}

#[test]
fn group_law() {
    let c = curve(CUBIC);
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { trop_cycle_new(c, &mut m) }, TropStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { trop_cycle_length(m, &mut s) }, TropStatus::Ok);
    assert_eq!(text(s), "6/1");
    let (p, q) = (CString::new("5/2,2").unwrap(), CString::new("4,7/2").unwrap());
    assert_eq!(unsafe { trop_cycle_add(m, p.as_ptr(), q.as_ptr(), &mut s) }, TropStatus::Ok);
    assert_eq!(text(s), "4/1,4/1");
    assert_eq!(unsafe { trop_cycle_lambda(m, p.as_ptr(), &mut s) }, TropStatus::Ok);
    assert_eq!(text(s), "1/12");
    assert_eq!(unsafe { trop_cycle_neg(m, p.as_ptr(), &mut s) }, TropStatus::Ok);
    assert_eq!(text(s), "2/1,5/2");
    let d = CString::new("(5/2,2)+(4,7/2)-2*O").unwrap();
    assert_eq!(unsafe { trop_cycle_reduce(m, d.as_ptr(), &mut s) }, TropStatus::Ok);
    assert_eq!(text(s), "4/1,4/1");
    let o = CString::new("3,4").unwrap();
    assert_eq!(unsafe { trop_cycle_set_origin(m, o.as_ptr()) }, TropStatus::Ok);
    assert_eq!(unsafe { trop_cycle_lambda(m, o.as_ptr(), &mut s) }, TropStatus::Ok);
    assert_eq!(text(s), "0/1");
    let off = CString::new("0,0").unwrap();
    assert_eq!(unsafe { trop_cycle_lambda(m, off.as_ptr(), &mut s) }, TropStatus::NotOnCycle);
    unsafe { trop_cycle_free(m) };

    let line = curve("0 + x + y");
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { trop_cycle_new(line, &mut m) }, TropStatus::NotElliptic);
    assert!(last_error().starts_with("not elliptic"));
    unsafe {
        trop_curve_free(line);
        trop_curve_free(c);
    }
}

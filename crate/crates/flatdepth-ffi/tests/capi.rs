//! Drives the C ABI the way a foreign caller would: status codes, handle
//! lifecycle, string ownership, and agreement with the native Rust API.

use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use flatdepth_ffi::{
    fd_last_error_message, fd_oracle_json, fd_query_json, fd_result_distance, fd_result_free,
    fd_result_incident_count, fd_result_is_degenerate, fd_result_strict_min, fd_result_to_json,
    fd_status_name, fd_string_free, fd_verify_json, fd_version, FdResult, FdStatus,
};

const DIAMOND: &str = r#"{"dimension": 2,
    "points": [[1, 0], [-1, 0], [0, 1], [0, -1]],
    "query": {"kind": "tukey2", "at": [0, 0]}}"#;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

/// Copies and frees a library-owned string.
unsafe fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let text = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { fd_string_free(p) };
    text
}

fn last_error() -> String {
    unsafe { take_string(fd_last_error_message()) }
}

fn solve(json: &str, strict_headline: bool) -> *mut FdResult {
    let text = c(json);
    let mut out: *mut FdResult = ptr::null_mut();
    let status = unsafe { fd_query_json(text.as_ptr(), strict_headline, &mut out) };
    assert_eq!(status, FdStatus::Ok, "{}", last_error());
    assert!(!out.is_null());
    out
}

fn result_json(handle: *const FdResult) -> String {
    let mut out: *mut c_char = ptr::null_mut();
    let status = unsafe { fd_result_to_json(handle, &mut out) };
    assert_eq!(status, FdStatus::Ok);
    unsafe { take_string(out) }
}

#[test]
fn solves_and_reports_through_getters() {
    let handle = solve(DIAMOND, false);
    unsafe {
        assert_eq!(fd_result_distance(handle), 2);
        assert_eq!(fd_result_strict_min(handle), 2);
        assert_eq!(fd_result_incident_count(handle), 0);
        assert!(!fd_result_is_degenerate(handle));
        fd_result_free(handle);
    }
}

#[test]
fn result_json_matches_the_native_writer_and_verifies() {
    let handle = solve(DIAMOND, false);
    let json = result_json(handle);
    unsafe { fd_result_free(handle) };

    let parsed = flatdepth::io::parse_result_json(&json).unwrap();
    assert_eq!(parsed.distance, 2);
    assert_eq!(parsed.meta.headline, "closed");
    assert_eq!(flatdepth::io::result_to_json(&parsed), json);

    let inst = c(DIAMOND);
    let res = c(&json);
    assert_eq!(
        unsafe { fd_verify_json(inst.as_ptr(), res.as_ptr()) },
        FdStatus::Ok
    );
}

#[test]
fn verification_rejects_a_tampered_distance() {
    let handle = solve(DIAMOND, false);
    let json = result_json(handle);
    unsafe { fd_result_free(handle) };

    let mut forged = flatdepth::io::parse_result_json(&json).unwrap();
    forged.distance += 1;
    let inst = c(DIAMOND);
    let res = c(&flatdepth::io::result_to_json(&forged));
    let status = unsafe { fd_verify_json(inst.as_ptr(), res.as_ptr()) };
    assert_eq!(status, FdStatus::VerifyFailed);
    assert!(last_error().contains("distance"), "{}", last_error());
}

#[test]
fn strict_headline_switches_the_reported_distance() {
    // One sample point sits on the query point, so closed and strict differ.
    let instance = r#"{"dimension": 2,
        "points": [[0, 0], [3, 0], [-3, 1], [1, 4]],
        "query": {"kind": "tukey2", "at": [0, 0]}}"#;
    let closed = solve(instance, false);
    let strict = solve(instance, true);
    unsafe {
        assert_eq!(fd_result_incident_count(closed), 1);
        assert_eq!(fd_result_distance(closed), fd_result_strict_min(closed) + 1);
        assert_eq!(fd_result_distance(strict), fd_result_strict_min(strict));
        assert_eq!(fd_result_strict_min(closed), fd_result_strict_min(strict));
        fd_result_free(closed);
        fd_result_free(strict);
    }
    let handle = solve(instance, true);
    let parsed = flatdepth::io::parse_result_json(&result_json(handle)).unwrap();
    unsafe { fd_result_free(handle) };
    assert_eq!(parsed.meta.headline, "strict");
}

#[test]
fn intersecting_flats_are_degenerate_with_distance_zero() {
    let instance = r#"{"dimension": 3,
        "hyperplanes": [{"coeffs": [1, 1, 1], "rhs": 2}],
        "query": {"kind": "crossdist",
                  "flat_a": {"points": [[0, 0, 0], [1, 0, 0]]},
                  "flat_b": {"points": [[0, 0, 0], [0, 1, 0]]}}}"#;
    let handle = solve(instance, false);
    unsafe {
        assert!(fd_result_is_degenerate(handle));
        assert_eq!(fd_result_distance(handle), 0);
        fd_result_free(handle);
    }
}

#[test]
fn oracle_agrees_with_the_sweep() {
    // Two skew lines with a handful of planes between them.
    let instance = r#"{"dimension": 3,
        "hyperplanes": [
            {"coeffs": [1, 0, 0], "rhs": 1},
            {"coeffs": [0, 1, 0], "rhs": -1},
            {"coeffs": [0, 0, 1], "rhs": 2},
            {"coeffs": [1, 1, 1], "rhs": 0},
            {"coeffs": [2, -1, 3], "rhs": 5}
        ],
        "query": {"kind": "crossdist",
                  "flat_a": {"point": [0, 0, 0], "direction": [1, 0, 0]},
                  "flat_b": {"point": [0, 0, 1], "direction": [0, 1, 0]}}}"#;
    let fast = solve(instance, false);
    let text = c(instance);
    let mut slow: *mut FdResult = ptr::null_mut();
    let status = unsafe { fd_oracle_json(text.as_ptr(), 2, false, &mut slow) };
    assert_eq!(status, FdStatus::Ok, "{}", last_error());
    unsafe {
        assert_eq!(fd_result_distance(fast), fd_result_distance(slow));
        assert_eq!(fd_result_strict_min(fast), fd_result_strict_min(slow));
    }
    let fast_meta = flatdepth::io::parse_result_json(&result_json(fast))
        .unwrap()
        .meta;
    let slow_meta = flatdepth::io::parse_result_json(&result_json(slow))
        .unwrap()
        .meta;
    assert_eq!(fast_meta.solver, "torus");
    assert_eq!(slow_meta.solver, "oracle");
    unsafe {
        fd_result_free(fast);
        fd_result_free(slow);
    }
}

#[test]
fn null_arguments_are_reported_not_crashed() {
    let mut out: *mut FdResult = ptr::null_mut();
    assert_eq!(
        unsafe { fd_query_json(ptr::null(), false, &mut out) },
        FdStatus::NullArgument
    );
    assert!(out.is_null());
    assert!(last_error().contains("instance_json"));

    let text = c(DIAMOND);
    assert_eq!(
        unsafe { fd_query_json(text.as_ptr(), false, ptr::null_mut()) },
        FdStatus::NullArgument
    );
    unsafe {
        assert_eq!(fd_result_distance(ptr::null()), 0);
        assert!(!fd_result_is_degenerate(ptr::null()));
        fd_result_free(ptr::null_mut());
        fd_string_free(ptr::null_mut());
    }
}

#[test]
fn invalid_utf8_is_rejected() {
    let bytes: [u8; 3] = [0xC3, 0x28, 0x00];
    let mut out: *mut FdResult = ptr::null_mut();
    let status = unsafe { fd_query_json(bytes.as_ptr().cast::<c_char>(), false, &mut out) };
    assert_eq!(status, FdStatus::InvalidUtf8);
    assert!(out.is_null());
}

#[test]
fn schema_violations_surface_as_parse_errors() {
    let cases = [
        "not json at all",
        r#"{"dimension": 2, "points": [[1, 0]]}"#,
        r#"{"dimension": 2, "points": [["1/0", 3]],
            "query": {"kind": "tukey2", "at": [0, 0]}}"#,
    ];
    for case in cases {
        let text = c(case);
        let mut out: *mut FdResult = ptr::null_mut();
        let status = unsafe { fd_query_json(text.as_ptr(), false, &mut out) };
        assert_eq!(status, FdStatus::ParseError, "{case}");
        assert!(out.is_null());
        assert!(!last_error().is_empty());
    }
}

#[test]
fn out_of_range_dimensions_are_unsupported() {
    let instance = r#"{"dimension": 5,
        "points": [[1, 2, 3, 4, 5]],
        "query": {"kind": "depth-line3",
                  "line": {"points": [[0,0,0,0,0], [1,0,0,0,0]]}}}"#;
    let text = c(instance);
    let mut out: *mut FdResult = ptr::null_mut();
    let status = unsafe { fd_query_json(text.as_ptr(), false, &mut out) };
    assert_eq!(status, FdStatus::Unsupported);
    assert!(last_error().contains("dimension"));
}

#[test]
fn status_names_and_version_are_static_strings() {
    let name = unsafe { CStr::from_ptr(fd_status_name(FdStatus::VerifyFailed)) };
    assert_eq!(name.to_str().unwrap(), "verify-failed");
    let ok = unsafe { CStr::from_ptr(fd_status_name(FdStatus::Ok)) };
    assert_eq!(ok.to_str().unwrap(), "ok");
    let version = unsafe { CStr::from_ptr(fd_version()) };
    assert_eq!(version.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn committed_header_declares_the_api() {
    let header = std::fs::read_to_string(
        std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("include")
            .join("flatdepth.h"),
    )
    .expect("committed header");
    for symbol in [
        "FdStatus",
        "FdResult",
        "fd_query_json",
        "fd_oracle_json",
        "fd_verify_json",
        "fd_result_distance",
        "fd_result_to_json",
        "fd_result_free",
        "fd_string_free",
        "fd_last_error_message",
        "fd_status_name",
        "fd_version",
    ] {
        assert!(header.contains(symbol), "header is missing {symbol}");
    }
}

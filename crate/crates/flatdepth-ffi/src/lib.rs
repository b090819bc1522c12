//! C interface for the exact depth solvers.
//!
//! Entry points accept UTF-8 JSON in the same instance and result schemas as
//! the command line tool and report an [`FdStatus`]. Calls never unwind
//! across the boundary; a caught panic comes back as [`FdStatus::Internal`].
//! Solved instances are returned as opaque [`FdResult`] handles with
//! accessor functions. Strings handed to the caller are heap copies owned by
//! the caller; release them with [`fd_string_free`]. A human-readable
//! message for the most recent failure on the current thread is available
//! from [`fd_last_error_message`].

#![deny(unsafe_op_in_unsafe_fn)]

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::catch_unwind;
use std::ptr;
use std::time::Instant;

use flatdepth::io::{self, ResultFile};

/// Outcome of a call across the C boundary.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FdStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// An input string was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The input violated the instance or result schema, or the instance
    /// carries no query to answer.
    ParseError = 3,
    /// The query asks for a dimension or flat shape outside the supported
    /// range.
    Unsupported = 4,
    /// The result does not hold up against its instance under recount.
    VerifyFailed = 5,
    /// A panic was caught at the boundary.
    Internal = 6,
}

/// Opaque handle to a solved instance. Release with [`fd_result_free`].
pub struct FdResult {
    inner: ResultFile,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: FdStatus, msg: impl Into<String>) -> FdStatus {
    // Interior nul bytes cannot reach a C caller; blank them out.
    let cleaned = msg.into().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = Some(CString::new(cleaned).expect("nul bytes removed"));
    });
    status
}

/// Reads a caller string, recording a descriptive error on failure.
unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, FdStatus> {
    if ptr.is_null() {
        return Err(fail(FdStatus::NullArgument, format!("{what} is null")));
    }
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| fail(FdStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

fn solve(text: &str, jobs: Option<usize>, strict_headline: bool) -> Result<ResultFile, FdStatus> {
    let inst = io::parse_instance(text).map_err(|e| fail(FdStatus::ParseError, e.to_string()))?;
    let Some(query) = inst.query.clone() else {
        return Err(fail(FdStatus::ParseError, "instance has no embedded query"));
    };
    let started = Instant::now();
    let answered = match jobs {
        None => io::answer(&inst, &query),
        Some(j) => io::answer_oracle(&inst, &query, j),
    };
    let report = answered.map_err(|e| {
        let status = if e.exit_code() == 4 {
            FdStatus::Unsupported
        } else {
            FdStatus::ParseError
        };
        fail(status, e.to_string())
    })?;
    Ok(io::result_file(
        &report,
        strict_headline,
        started.elapsed().as_millis() as u64,
    ))
}

fn verify(inst_text: &str, result_text: &str) -> Result<(), FdStatus> {
    let inst =
        io::parse_instance(inst_text).map_err(|e| fail(FdStatus::ParseError, e.to_string()))?;
    let Some(query) = inst.query.clone() else {
        return Err(fail(FdStatus::ParseError, "instance has no embedded query"));
    };
    let result = io::parse_result_json(result_text)
        .map_err(|e| fail(FdStatus::ParseError, e.to_string()))?;
    io::verify_witness(&inst, &query, &result).map_err(|m| fail(FdStatus::VerifyFailed, m))
}

/// Solves the query embedded in `instance_json` with the sweep solver.
///
/// With `strict_headline` set, the handle's distance reports the strict
/// crossing minimum instead of the closed count. On success writes a fresh
/// handle to `out`; on failure writes null.
///
/// # Safety
/// `instance_json` must be null or a nul-terminated string valid for the
/// duration of the call; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn fd_query_json(
    instance_json: *const c_char,
    strict_headline: bool,
    out: *mut *mut FdResult,
) -> FdStatus {
    if out.is_null() {
        return fail(FdStatus::NullArgument, "out is null");
    }
    unsafe { *out = ptr::null_mut() };
    let text = match unsafe { read_str(instance_json, "instance_json") } {
        Ok(t) => t,
        Err(status) => return status,
    };
    match catch_unwind(|| solve(text, None, strict_headline)) {
        Ok(Ok(result)) => {
            unsafe { *out = Box::into_raw(Box::new(FdResult { inner: result })) };
            FdStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => fail(FdStatus::Internal, "solver panicked"),
    }
}

/// Solves the embedded query with the exhaustive reference solver, splitting
/// the work over `jobs` threads (0 is treated as 1). Slower than
/// [`fd_query_json`] but structurally independent of it.
///
/// # Safety
/// `instance_json` must be null or a nul-terminated string valid for the
/// duration of the call; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn fd_oracle_json(
    instance_json: *const c_char,
    jobs: u32,
    strict_headline: bool,
    out: *mut *mut FdResult,
) -> FdStatus {
    if out.is_null() {
        return fail(FdStatus::NullArgument, "out is null");
    }
    unsafe { *out = ptr::null_mut() };
    let text = match unsafe { read_str(instance_json, "instance_json") } {
        Ok(t) => t,
        Err(status) => return status,
    };
    match catch_unwind(|| solve(text, Some(jobs.max(1) as usize), strict_headline)) {
        Ok(Ok(result)) => {
            unsafe { *out = Box::into_raw(Box::new(FdResult { inner: result })) };
            FdStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => fail(FdStatus::Internal, "solver panicked"),
    }
}

/// Recounts `result_json` against `instance_json` without rerunning any
/// solver. Returns [`FdStatus::Ok`] when every reported field holds up and
/// [`FdStatus::VerifyFailed`] on the first mismatch, with the mismatch
/// described by [`fd_last_error_message`].
///
/// # Safety
/// Both arguments must be null or nul-terminated strings valid for the
/// duration of the call.
#[no_mangle]
pub unsafe extern "C" fn fd_verify_json(
    instance_json: *const c_char,
    result_json: *const c_char,
) -> FdStatus {
    let inst_text = match unsafe { read_str(instance_json, "instance_json") } {
        Ok(t) => t,
        Err(status) => return status,
    };
    let result_text = match unsafe { read_str(result_json, "result_json") } {
        Ok(t) => t,
        Err(status) => return status,
    };
    match catch_unwind(|| verify(inst_text, result_text)) {
        Ok(Ok(())) => FdStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(FdStatus::Internal, "verifier panicked"),
    }
}

/// Distance under the handle's headline convention. Returns 0 for null.
///
/// # Safety
/// `result` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn fd_result_distance(result: *const FdResult) -> u64 {
    unsafe { result.as_ref() }.map_or(0, |r| r.inner.distance)
}

/// Minimum number of hyperplanes crossed strictly. Returns 0 for null.
///
/// # Safety
/// `result` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn fd_result_strict_min(result: *const FdResult) -> u64 {
    unsafe { result.as_ref() }.map_or(0, |r| r.inner.strict_min)
}

/// Number of hyperplanes containing the whole query flat. Returns 0 for
/// null.
///
/// # Safety
/// `result` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn fd_result_incident_count(result: *const FdResult) -> u64 {
    unsafe { result.as_ref() }.map_or(0, |r| r.inner.incident_count)
}

/// True when the query flats intersect, making the distance trivially zero
/// and leaving no witness segment. Returns false for null.
///
/// # Safety
/// `result` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn fd_result_is_degenerate(result: *const FdResult) -> bool {
    unsafe { result.as_ref() }.is_some_and(|r| r.inner.witness.is_none())
}

/// Serializes the handle to the canonical result JSON. On success writes a
/// caller-owned string to `out`; release it with [`fd_string_free`].
///
/// # Safety
/// `result` must be null or a live handle from this library; `out` must be
/// null or writable.
#[no_mangle]
pub unsafe extern "C" fn fd_result_to_json(
    result: *const FdResult,
    out: *mut *mut c_char,
) -> FdStatus {
    if out.is_null() {
        return fail(FdStatus::NullArgument, "out is null");
    }
    unsafe { *out = ptr::null_mut() };
    let Some(r) = (unsafe { result.as_ref() }) else {
        return fail(FdStatus::NullArgument, "result is null");
    };
    match CString::new(io::result_to_json(&r.inner)) {
        Ok(json) => {
            unsafe { *out = json.into_raw() };
            FdStatus::Ok
        }
        Err(_) => fail(FdStatus::Internal, "result JSON contained a nul byte"),
    }
}

/// Releases a result handle. Null is ignored.
///
/// # Safety
/// `result` must be null or a handle from this library that is not used
/// again afterwards.
#[no_mangle]
pub unsafe extern "C" fn fd_result_free(result: *mut FdResult) {
    if !result.is_null() {
        drop(unsafe { Box::from_raw(result) });
    }
}

/// Releases a string allocated by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string allocated by this library that is not used
/// again afterwards.
#[no_mangle]
pub unsafe extern "C" fn fd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Copy of the message recorded by the most recent failing call on this
/// thread, or null when none has failed yet. Release with
/// [`fd_string_free`].
#[no_mangle]
pub extern "C" fn fd_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null_mut(), |msg| msg.clone().into_raw())
    })
}

/// Stable lowercase name for a status code. The pointer is static; do not
/// free it.
#[no_mangle]
pub extern "C" fn fd_status_name(status: FdStatus) -> *const c_char {
    let name: &'static CStr = match status {
        FdStatus::Ok => c"ok",
        FdStatus::NullArgument => c"null-argument",
        FdStatus::InvalidUtf8 => c"invalid-utf8",
        FdStatus::ParseError => c"parse-error",
        FdStatus::Unsupported => c"unsupported",
        FdStatus::VerifyFailed => c"verify-failed",
        FdStatus::Internal => c"internal",
    };
    name.as_ptr()
}

/// Library version as a static string; do not free it.
#[no_mangle]
pub extern "C" fn fd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

//! C interface to weylext.
//!
//! Every fallible function returns a [`WeylextStatus`]; on failure the
//! message is available from [`weylext_last_error_message`] on the same
//! thread. Matrices are opaque handles released with
//! [`weylext_matrix_free`]; strings returned through out-parameters are
//! released with [`weylext_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_traits::ToPrimitive;
use weylext::cli::MatrixDoc;
use weylext::combinatorics::HookParams;
use weylext::error::Error;
use weylext::ext::{compute_ext2, predicted_ext2, MatrixSource};
use weylext::intlin::ExtGroup;
use weylext::oracle::oracle_m;
use weylext::pipeline::{reduce, PipelineOptions};
use weylext::presentation::{build_m, LabeledIntMatrix};
use weylext::weyl::WeightSpaceCache;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylextStatus {
    Ok = 0,
    InvalidParams = 1,
    NullPointer = 2,
    OutOfRange = 3,
    /// A value does not fit the requested C integer type.
    Overflow = 4,
    /// A computation finished but one of its checks failed.
    VerificationFailed = 5,
    Internal = 6,
}

/// Source selector for matrix-based calls.
pub const WEYLEXT_SOURCE_CLOSED_FORM: i32 = 0;
pub const WEYLEXT_SOURCE_ORACLE: i32 = 1;

/// Opaque presentation matrix.
pub struct WeylextMatrix {
    inner: LabeledIntMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn fail(status: WeylextStatus, msg: impl Into<String>) -> WeylextStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> WeylextStatus {
    let status = match e {
        Error::InvalidParams(_) => WeylextStatus::InvalidParams,
        Error::StageCheck { .. } => WeylextStatus::VerificationFailed,
        _ => WeylextStatus::Internal,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning panics into `Internal`.
fn guard(f: impl FnOnce() -> WeylextStatus) -> WeylextStatus {
    set_error("");
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(WeylextStatus::Internal, "panic in weylext"))
}

fn source(code: i32) -> Result<MatrixSource, WeylextStatus> {
    match code {
        WEYLEXT_SOURCE_CLOSED_FORM => Ok(MatrixSource::ClosedForm),
        WEYLEXT_SOURCE_ORACLE => Ok(MatrixSource::Oracle),
        _ => Err(fail(WeylextStatus::InvalidParams, format!("unknown source {code}"))),
    }
}

fn string_out(s: String, out: *mut *mut c_char) -> WeylextStatus {
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: callers check `out` for null first.
            unsafe { *out = c.into_raw() };
            WeylextStatus::Ok
        }
        Err(_) => fail(WeylextStatus::Internal, "output contains a NUL byte"),
    }
}

fn group_order(g: &ExtGroup, out: *mut u64) -> WeylextStatus {
    if g.torsion_orders.len() > 1 {
        return fail(WeylextStatus::VerificationFailed, format!("group {g} is not cyclic"));
    }
    match g.order().to_u64() {
        Some(n) => {
            // SAFETY: callers check `out` for null first.
            unsafe { *out = n };
            WeylextStatus::Ok
        }
        None => fail(WeylextStatus::Overflow, "group order exceeds 64 bits"),
    }
}

/// Builds M(a, b) from the given source into `*out`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn weylext_matrix_build(
    a: usize,
    b: usize,
    source_code: i32,
    out: *mut *mut WeylextMatrix,
) -> WeylextStatus {
    guard(|| {
        if out.is_null() {
            return fail(WeylextStatus::NullPointer, "out is null");
        }
        let src = match source(source_code) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let params = match HookParams::new(a, b) {
            Ok(p) => p,
            Err(e) => return from_error(e),
        };
        if b < 3 {
            return fail(WeylextStatus::InvalidParams, "the matrix needs b >= 3");
        }
        let m = match src {
            MatrixSource::ClosedForm => build_m(&params),
            MatrixSource::Oracle => oracle_m(&params, &WeightSpaceCache::new()),
        };
        match m {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(WeylextMatrix { inner }));
                WeylextStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Row count; 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn weylext_matrix_rows(m: *const WeylextMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.inner.rows())
}

/// Column count; 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn weylext_matrix_cols(m: *const WeylextMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.inner.cols())
}

/// Reads entry (row, col) into `*out`.
///
/// # Safety
/// `m` must be null or a live handle; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn weylext_matrix_entry(
    m: *const WeylextMatrix,
    row: usize,
    col: usize,
    out: *mut i64,
) -> WeylextStatus {
    guard(|| {
        let Some(m) = m.as_ref() else {
            return fail(WeylextStatus::NullPointer, "matrix is null");
        };
        if out.is_null() {
            return fail(WeylextStatus::NullPointer, "out is null");
        }
        if row >= m.inner.rows() || col >= m.inner.cols() {
            return fail(
                WeylextStatus::OutOfRange,
                format!("({row}, {col}) outside {}x{}", m.inner.rows(), m.inner.cols()),
            );
        }
        match m.inner.entries.get(row, col).to_i64() {
            Some(x) => {
                *out = x;
                WeylextStatus::Ok
            }
            None => fail(WeylextStatus::Overflow, "entry exceeds 64 bits"),
        }
    })
}

/// Serializes the matrix with its labels; free the string with
/// [`weylext_string_free`].
///
/// # Safety
/// `m` must be null or a live handle; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn weylext_matrix_to_json(
    m: *const WeylextMatrix,
    out: *mut *mut c_char,
) -> WeylextStatus {
    guard(|| {
        let Some(m) = m.as_ref() else {
            return fail(WeylextStatus::NullPointer, "matrix is null");
        };
        if out.is_null() {
            return fail(WeylextStatus::NullPointer, "out is null");
        }
        match serde_json::to_string(&MatrixDoc::from(&m.inner)) {
            Ok(s) => string_out(s, out),
            Err(e) => fail(WeylextStatus::Internal, e.to_string()),
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn weylext_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `m` must be null or a handle from [`weylext_matrix_build`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn weylext_matrix_free(m: *mut WeylextMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Order of the computed Ext² (1 when trivial).
///
/// # Safety
/// `order` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn weylext_ext2_compute(
    a: usize,
    b: usize,
    source_code: i32,
    order: *mut u64,
) -> WeylextStatus {
    guard(|| {
        if order.is_null() {
            return fail(WeylextStatus::NullPointer, "order is null");
        }
        let src = match source(source_code) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match compute_ext2(a, b, src) {
            Ok(g) => group_order(&g, order),
            Err(e) => from_error(e),
        }
    })
}

/// Order of the predicted Ext² (1 when trivial).
///
/// # Safety
/// `order` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn weylext_ext2_predict(a: usize, b: usize, order: *mut u64) -> WeylextStatus {
    guard(|| {
        if order.is_null() {
            return fail(WeylextStatus::NullPointer, "order is null");
        }
        match predicted_ext2(a, b) {
            Ok(g) => group_order(&g, order),
            Err(e) => from_error(e),
        }
    })
}

/// Runs the reduction and writes its trace as JSON. Returns
/// `VerificationFailed` (with the trace still written, unless `strict`)
/// when a stage check fails.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn weylext_pipeline_run(
    a: usize,
    b: usize,
    strict: bool,
    out: *mut *mut c_char,
) -> WeylextStatus {
    guard(|| {
        if out.is_null() {
            return fail(WeylextStatus::NullPointer, "out is null");
        }
        let params = match HookParams::new(a, b) {
            Ok(p) => p,
            Err(e) => return from_error(e),
        };
        if b < 3 {
            return fail(WeylextStatus::InvalidParams, "the pipeline needs b >= 3");
        }
        let opts = PipelineOptions {
            strict,
            keep_matrices: false,
        };
        let trace = match reduce(&params, &opts) {
            Ok(t) => t,
            Err(e) => return from_error(e),
        };
        let passed = trace.passed();
        let st = match serde_json::to_string(&trace) {
            Ok(s) => string_out(s, out),
            Err(e) => return fail(WeylextStatus::Internal, e.to_string()),
        };
        if st == WeylextStatus::Ok && !passed {
            return fail(WeylextStatus::VerificationFailed, trace.failures().join("; "));
        }
        st
    })
}

/// Message for the last failure on this thread; empty after a success.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn weylext_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

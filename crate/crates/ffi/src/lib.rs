//! C ABI for the bcice engine.
//!
//! Bend weights and spectral points live behind opaque handles created by
//! the `*_from_json` / `*_random` constructors and released with the
//! matching `*_free`. Exact values cross the boundary as `"p/q"` strings
//! allocated here; release them with `bc_string_free`. Every call returns a
//! `BcStatus`; on failure `bc_last_error_message` describes the error.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use bcice::arith::format_rational;
use bcice::braket::{braket_partition_function, BraketMethod};
use bcice::classify::classify_bend_weights;
use bcice::lattice::{
    partition_function_a, partition_function_bc, BendRow, BendWeights, Partition, PointSampler, SpectralPoint,
};
use bcice::relations::{check_solvable_with, SolveMode, SolveOptions, Verdict};
use bcice::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    PoleHit = 5,
    ZeroBase = 6,
    RegimeMismatch = 7,
    MissingParam = 8,
    NoSolutionFound = 9,
    ConservationViolated = 10,
    DivisionByZeroRhs = 11,
    Panic = 12,
}

/// Opaque per-pair bend weights.
pub struct BcBendWeights {
    inner: BendWeights,
}

/// Opaque exact point `(q, x_1, ..., x_r)`.
pub struct BcPoint {
    inner: SpectralPoint,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(BcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let s = match &e {
            Error::ZeroBase => BcStatus::ZeroBase,
            Error::ConservationViolated(_) => BcStatus::ConservationViolated,
            Error::PoleHit(_) => BcStatus::PoleHit,
            Error::DivisionByZeroRhs { .. } => BcStatus::DivisionByZeroRhs,
            Error::RegimeMismatch(_) => BcStatus::RegimeMismatch,
            Error::MissingParam(_) => BcStatus::MissingParam,
            Error::NoSolutionFound(_) => BcStatus::NoSolutionFound,
            Error::InvalidInput(_) => BcStatus::InvalidInput,
            Error::Parse(_) => BcStatus::Parse,
        };
        Failure(s, e.to_string())
    }
}

type Res<T> = Result<T, Failure>;

fn guard(f: impl FnOnce() -> Res<()>) -> BcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            BcStatus::Ok
        }
        Ok(Err(Failure(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            BcStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(BcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Res<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(BcStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Res<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn partition(parts: *const u32, len: usize) -> Res<Partition> {
    if parts.is_null() {
        return Err(null("parts"));
    }
    Ok(Partition::new(std::slice::from_raw_parts(parts, len).to_vec())?)
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> Res<()> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Res<()> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|_| Failure(BcStatus::InvalidInput, "string contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).unwrap_or_else(|e| format!("{{\"error\":\"{e}\"}}"))
}

/// Parses a JSON array of `{"A","B","C","D"}` rows.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bc_bend_weights_from_json(json: *const c_char, out: *mut *mut BcBendWeights) -> BcStatus {
    guard(|| {
        let s = text(json, "json")?;
        let inner: BendWeights = serde_json::from_str(s).map_err(|e| Failure(BcStatus::Parse, e.to_string()))?;
        put(out, BcBendWeights { inner })
    })
}

/// `name` is `wzj` or `allones`, repeated over `rank` pairs.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bc_bend_weights_builtin(
    name: *const c_char,
    rank: usize,
    out: *mut *mut BcBendWeights,
) -> BcStatus {
    guard(|| {
        let row = match text(name, "name")? {
            "wzj" => BendRow::wzj(),
            "allones" => BendRow::all_ones(),
            other => return Err(Failure(BcStatus::InvalidInput, format!("unknown bend weights {other:?}"))),
        };
        put(out, BcBendWeights { inner: BendWeights::uniform(row, rank) })
    })
}

/// # Safety
/// `bw` must come from a `bc_bend_weights_*` constructor or be null.
#[no_mangle]
pub unsafe extern "C" fn bc_bend_weights_free(bw: *mut BcBendWeights) {
    if !bw.is_null() {
        drop(Box::from_raw(bw));
    }
}

/// Parses `{"q": "p/q", "xs": [...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bc_point_from_json(json: *const c_char, out: *mut *mut BcPoint) -> BcStatus {
    guard(|| {
        let s = text(json, "json")?;
        let inner: SpectralPoint = serde_json::from_str(s).map_err(|e| Failure(BcStatus::Parse, e.to_string()))?;
        put(out, BcPoint { inner })
    })
}

/// Deterministic generic point of the given rank.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bc_point_random(rank: usize, seed: u64, out: *mut *mut BcPoint) -> BcStatus {
    guard(|| put(out, BcPoint { inner: PointSampler::new(seed).point(rank) }))
}

/// # Safety
/// `pt` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bc_point_to_json(pt: *const BcPoint, out: *mut *mut c_char) -> BcStatus {
    guard(|| put_string(out, json(&handle(pt, "point")?.inner)))
}

/// # Safety
/// `pt` must come from a `bc_point_*` constructor or be null.
#[no_mangle]
pub unsafe extern "C" fn bc_point_free(pt: *mut BcPoint) {
    if !pt.is_null() {
        drop(Box::from_raw(pt));
    }
}

/// Type A partition function for the partition `parts[0..len]`.
///
/// # Safety
/// `parts` must point to `len` values; handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bc_partition_function_a(
    parts: *const u32,
    len: usize,
    pt: *const BcPoint,
    out: *mut *mut c_char,
) -> BcStatus {
    guard(|| {
        let l = partition(parts, len)?;
        let z = partition_function_a(&l, &handle(pt, "point")?.inner)?;
        put_string(out, format_rational(&z))
    })
}

/// Type B/C partition function by state enumeration.
///
/// # Safety
/// `parts` must point to `len` values; handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bc_partition_function_bc(
    parts: *const u32,
    len: usize,
    bw: *const BcBendWeights,
    pt: *const BcPoint,
    out: *mut *mut c_char,
) -> BcStatus {
    guard(|| {
        let l = partition(parts, len)?;
        let z = partition_function_bc(&l, &handle(bw, "bend weights")?.inner, &handle(pt, "point")?.inner)?;
        put_string(out, format_rational(&z))
    })
}

/// Type B/C partition function from column transfer operators; nonzero
/// `twisted` uses the conjugated columns and `<K|F^{-1}`.
///
/// # Safety
/// `parts` must point to `len` values; handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bc_braket(
    parts: *const u32,
    len: usize,
    bw: *const BcBendWeights,
    pt: *const BcPoint,
    twisted: c_int,
    out: *mut *mut c_char,
) -> BcStatus {
    guard(|| {
        let l = partition(parts, len)?;
        let m = if twisted != 0 { BraketMethod::Twisted } else { BraketMethod::Braket };
        let z = braket_partition_function(&l, &handle(bw, "bend weights")?.inner, &handle(pt, "point")?.inner, m)?;
        put_string(out, format_rational(&z))
    })
}

/// Sets `*solvable` to 1 or 0; writes the JSON report to `report` unless
/// it is null.
///
/// # Safety
/// `bw` must be live; `solvable` writable; `report` writable or null.
#[no_mangle]
pub unsafe extern "C" fn bc_check_solvable(
    bw: *const BcBendWeights,
    rank: usize,
    seed: u64,
    solvable: *mut c_int,
    report: *mut *mut c_char,
) -> BcStatus {
    guard(|| {
        let bw = &handle(bw, "bend weights")?.inner;
        bw.require_rank(rank)?;
        if solvable.is_null() {
            return Err(null("solvable"));
        }
        let rep = check_solvable_with(bw, rank, SolveMode::Full, SolveOptions { samples: 5, seed });
        *solvable = c_int::from(rep.verdict == Verdict::Solvable);
        if !report.is_null() {
            put_string(report, json(&rep))?;
        }
        Ok(())
    })
}

/// JSON classification against the solvable catalogs.
///
/// # Safety
/// `bw` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bc_classify(bw: *const BcBendWeights, rank: usize, out: *mut *mut c_char) -> BcStatus {
    guard(|| {
        let c = classify_bend_weights(&handle(bw, "bend weights")?.inner, rank)?;
        put_string(out, json(&c))
    })
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn bc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread; empty after success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn bc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

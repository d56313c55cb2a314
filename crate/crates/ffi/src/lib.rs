// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.


//! C ABI over the `admissible` crate.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `*_free`. Every fallible call returns an [`AdmStatus`]
//! and writes its result through an out-pointer only on `ADM_STATUS_OK`.
//! No function unwinds across the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::OnceLock;

use admissible::enumerator::{sweep_parallel, CountLedger, SweepMode, SweepPartition};
use admissible::linalg::incidence_determinant;
use admissible::taxonomy::NUM_LABELS;
use admissible::{
    classify, is_admissible_graph, rank_complex, unrank_complex, Complex, Error, TaxonomyLabel,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidComplex = 2,
    OutOfRange = 3,
    Panic = 4,
}

/// An 8-line complex on the 8 points of F_2^3.
pub struct AdmComplex(Complex);

/// Counts from a sweep over a rank range.
pub struct AdmLedger(CountLedger);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: impl Into<String>) {
    let c = CString::new(message.into().replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> AdmStatus {
    set_last_error(e.to_string());
    match e {
        Error::OutOfRange { .. } | Error::InvalidPartition { .. } => AdmStatus::OutOfRange,
        _ => AdmStatus::InvalidComplex,
    }
}

fn guard(f: impl FnOnce() -> AdmStatus) -> AdmStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_last_error("internal panic");
        AdmStatus::Panic
    })
}

macro_rules! nonnull {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            set_last_error(concat!("`", stringify!($p), "` is NULL"));
            return AdmStatus::NullPointer;
        })+
    };
}

/// Message describing the most recent failure on this thread, or NULL. The
/// pointer is valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn adm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a complex from 8 lines given as 16 point indices `a0 b0 a1 b1 ...`.
///
/// # Safety
/// `endpoints` must point to 16 readable bytes; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn adm_complex_new(
    endpoints: *const u8,
    out: *mut *mut AdmComplex,
) -> AdmStatus {
    guard(|| {
        nonnull!(endpoints, out);
        // SAFETY: caller guarantees 16 readable bytes.
        let raw = unsafe { std::slice::from_raw_parts(endpoints, 16) };
        let pairs: Vec<(u8, u8)> = raw.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        match Complex::from_pairs(&pairs) {
            Ok(c) => {
                // SAFETY: `out` checked non-null and writable by contract.
                unsafe { *out = Box::into_raw(Box::new(AdmComplex(c))) };
                AdmStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Builds the complex with the given colex rank, `0 <= rank < 3108105`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn adm_complex_from_rank(rank: u64, out: *mut *mut AdmComplex) -> AdmStatus {
    guard(|| {
        nonnull!(out);
        match unrank_complex(rank) {
            Ok(c) => {
                // SAFETY: `out` checked non-null.
                unsafe { *out = Box::into_raw(Box::new(AdmComplex(c))) };
                AdmStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// # Safety
/// `c` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn adm_complex_free(c: *mut AdmComplex) {
    if !c.is_null() {
        // SAFETY: allocated by Box::into_raw in this library.
        drop(unsafe { Box::from_raw(c) });
    }
}

/// # Safety
/// `c` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn adm_complex_rank(c: *const AdmComplex, out: *mut u64) -> AdmStatus {
    guard(|| {
        nonnull!(c, out);
        // SAFETY: both checked non-null; validity by contract.
        unsafe { *out = rank_complex((*c).0) };
        AdmStatus::Ok
    })
}

/// 28-bit mask of the complex's lines, line `{i, j}` (i < j) at bit
/// `j(j-1)/2 + i`.
///
/// # Safety
/// `c` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn adm_complex_mask(c: *const AdmComplex, out: *mut u32) -> AdmStatus {
    guard(|| {
        nonnull!(c, out);
        // SAFETY: both checked non-null; validity by contract.
        unsafe { *out = (*c).0.mask() };
        AdmStatus::Ok
    })
}

/// Writes the label index in `0..adm_label_count()`.
///
/// # Safety
/// `c` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn adm_complex_classify(c: *const AdmComplex, out: *mut u32) -> AdmStatus {
    guard(|| {
        nonnull!(c, out);
        // SAFETY: both checked non-null; validity by contract.
        unsafe { *out = classify((*c).0).index() as u32 };
        AdmStatus::Ok
    })
}

/// # Safety
/// `c` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn adm_complex_is_admissible(
    c: *const AdmComplex,
    out: *mut bool,
) -> AdmStatus {
    guard(|| {
        nonnull!(c, out);
        // SAFETY: both checked non-null; validity by contract.
        unsafe { *out = is_admissible_graph((*c).0).admissible };
        AdmStatus::Ok
    })
}

/// Exact determinant of the 8x8 incidence matrix, rows in ascending line
/// order.
///
/// # Safety
/// `c` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn adm_complex_determinant(c: *const AdmComplex, out: *mut i64) -> AdmStatus {
    guard(|| {
        nonnull!(c, out);
        // SAFETY: both checked non-null; validity by contract.
        unsafe { *out = incidence_determinant((*c).0) };
        AdmStatus::Ok
    })
}

#[no_mangle]
pub extern "C" fn adm_label_count() -> u32 {
    NUM_LABELS as u32
}

fn label_names() -> &'static [CString] {
    static NAMES: OnceLock<Vec<CString>> = OnceLock::new();
    NAMES.get_or_init(|| {
        TaxonomyLabel::ALL
            .iter()
            .map(|l| CString::new(l.name()).expect("label names are ASCII"))
            .collect()
    })
}

/// Static NUL-terminated name of a label index, or NULL when out of range.
#[no_mangle]
pub extern "C" fn adm_label_name(label: u32) -> *const c_char {
    label_names()
        .get(label as usize)
        .map_or(ptr::null(), |c| c.as_ptr())
}

/// Sweeps ranks `[start, end)` with both admissibility oracles on `jobs`
/// threads. The ledger does not depend on `jobs`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn adm_ledger_sweep(
    start: u64,
    end: u64,
    jobs: u32,
    out: *mut *mut AdmLedger,
) -> AdmStatus {
    guard(|| {
        nonnull!(out);
        if jobs == 0 {
            set_last_error("jobs must be at least 1");
            return AdmStatus::OutOfRange;
        }
        match SweepPartition::new(start, end) {
            Ok(p) => {
                let ledger = sweep_parallel(p, jobs as usize, SweepMode::DualOracle);
                // SAFETY: `out` checked non-null.
                unsafe { *out = Box::into_raw(Box::new(AdmLedger(ledger))) };
                AdmStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// # Safety
/// `l` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn adm_ledger_free(l: *mut AdmLedger) {
    if !l.is_null() {
        // SAFETY: allocated by Box::into_raw in this library.
        drop(unsafe { Box::from_raw(l) });
    }
}

/// # Safety
/// `l` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn adm_ledger_count(
    l: *const AdmLedger,
    label: u32,
    out: *mut u64,
) -> AdmStatus {
    guard(|| {
        nonnull!(l, out);
        let Some(&label) = TaxonomyLabel::ALL.get(label as usize) else {
            set_last_error(format!("label index {label} out of range"));
            return AdmStatus::OutOfRange;
        };
        // SAFETY: both checked non-null; validity by contract.
        unsafe { *out = (*l).0.count(label) };
        AdmStatus::Ok
    })
}

/// # Safety
/// `l` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn adm_ledger_total(l: *const AdmLedger, out: *mut u64) -> AdmStatus {
    guard(|| {
        nonnull!(l, out);
        // SAFETY: both checked non-null; validity by contract.
        unsafe { *out = (*l).0.total };
        AdmStatus::Ok
    })
}

/// # Safety
/// `l` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn adm_ledger_admissible(l: *const AdmLedger, out: *mut u64) -> AdmStatus {
    guard(|| {
        nonnull!(l, out);
        // SAFETY: both checked non-null; validity by contract.
        unsafe { *out = (*l).0.admissible };
        AdmStatus::Ok
    })
}

/// Complexes on which the graph criterion and the determinant disagree.
///
/// # Safety
/// `l` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn adm_ledger_oracle_disagreements(
    l: *const AdmLedger,
    out: *mut u64,
) -> AdmStatus {
    guard(|| {
        nonnull!(l, out);
        // SAFETY: both checked non-null; validity by contract.
        unsafe { *out = (*l).0.oracle_disagreements };
        AdmStatus::Ok
    })
}

/// Sorted-key JSON rendering; free the result with [`adm_string_free`].
///
/// # Safety
/// `l` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn adm_ledger_to_json(l: *const AdmLedger, out: *mut *mut c_char) -> AdmStatus {
    guard(|| {
        nonnull!(l, out);
        // SAFETY: checked non-null; validity by contract.
        let text = unsafe { (*l).0.to_json() }.to_string();
        let c = CString::new(text).expect("JSON has no NUL");
        // SAFETY: `out` checked non-null.
        unsafe { *out = c.into_raw() };
        AdmStatus::Ok
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn adm_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: allocated by CString::into_raw in this library.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Borrowed view of a C string for tests and callers on the Rust side.
///
/// # Safety
/// `s` must be NULL or a valid NUL-terminated string.
pub unsafe fn c_str<'a>(s: *const c_char) -> Option<&'a str> {
    if s.is_null() {
        None
    } else {
        // SAFETY: by contract.
        unsafe { CStr::from_ptr(s) }.to_str().ok()
    }
}

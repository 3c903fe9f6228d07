//! C ABI over `latzeta`: class groups and coefficient tables behind opaque
//! handles. Every fallible call returns an `LzStatus`; the message of the
//! last failure on the calling thread is available from
//! `lz_last_error_message`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use latzeta::formulas::gl_zeta_for_form;
use latzeta::sublattice::{brute_coefficients, CoefficientTable};
use latzeta::{Bqf, ClassGroup, Error};

/// Outcome of a call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LzStatus {
    Ok = 0,
    /// Input outside the supported domain (not fundamental, wrong discriminant, ...).
    Domain = 1,
    /// Checked integer arithmetic overflowed.
    Overflow = 2,
    /// An internal consistency check failed.
    Inconsistent = 3,
    NullPointer = 4,
    /// Index past the end of a table or group.
    OutOfRange = 5,
    /// A Rust panic was caught at the boundary.
    Panic = 6,
}

/// Which coefficient column to read.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LzMode {
    /// Proper isometry classes, `a_m^+`.
    Sl = 0,
    /// All isometry classes, `a_m`.
    Gl = 1,
}

/// Opaque class group of a fundamental discriminant.
pub struct LzClassGroup(ClassGroup);

/// Opaque table of `(a_m^+, a_m)` for `1 ≤ m ≤ N`.
pub struct LzSeries(CoefficientTable);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> LzStatus {
    match e {
        Error::Domain(_) => LzStatus::Domain,
        Error::Overflow(_) => LzStatus::Overflow,
        Error::Inconsistent(_) => LzStatus::Inconsistent,
    }
}

fn guard(f: impl FnOnce() -> Result<(), LzStatus>) -> LzStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LzStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside latzeta".into());
            LzStatus::Panic
        }
    }
}

fn fail(e: Error) -> LzStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

fn null(what: &str) -> LzStatus {
    set_error(format!("{what} is null"));
    LzStatus::NullPointer
}

fn out_of_range(msg: String) -> LzStatus {
    set_error(msg);
    LzStatus::OutOfRange
}

/// Message for the last non-`Ok` status on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lz_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds the class group of `disc` into `*out`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lz_class_group_new(disc: i64, out: *mut *mut LzClassGroup) -> LzStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let group = ClassGroup::new(disc).map_err(fail)?;
        *out = Box::into_raw(Box::new(LzClassGroup(group)));
        Ok(())
    })
}

/// Class number, or 0 for a null handle.
///
/// # Safety
/// `group` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lz_class_group_order(group: *const LzClassGroup) -> usize {
    group.as_ref().map_or(0, |g| g.0.order())
}

/// Reduced form of class `index` as `(a, b, c)`; classes are sorted.
///
/// # Safety
/// `group` must be a live handle and `out` valid for three writes.
#[no_mangle]
pub unsafe extern "C" fn lz_class_group_form(group: *const LzClassGroup, index: usize, out: *mut i64) -> LzStatus {
    guard(|| {
        let g = group.as_ref().ok_or_else(|| null("group"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        if index >= g.0.order() {
            return Err(out_of_range(format!("class {index} of {}", g.0.order())));
        }
        let f = g.0.form(index);
        let coeffs = [f.a, f.b, f.c].map(|v| v as i64);
        ptr::copy_nonoverlapping(coeffs.as_ptr(), out, 3);
        Ok(())
    })
}

/// Index of the product of classes `a` and `b`.
///
/// # Safety
/// `group` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lz_class_group_compose(group: *const LzClassGroup, a: usize, b: usize, out: *mut usize) -> LzStatus {
    guard(|| {
        let g = group.as_ref().ok_or_else(|| null("group"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let h = g.0.order();
        if a >= h || b >= h {
            return Err(out_of_range(format!("classes {a}, {b} of {h}")));
        }
        *out = g.0.compose(a, b);
        Ok(())
    })
}

/// # Safety
/// `group` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lz_class_group_free(group: *mut LzClassGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

fn series_new(a: i64, b: i64, c: i64, n: usize, out: *mut *mut LzSeries, formula: bool) -> LzStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let f = Bqf::new(a as i128, b as i128, c as i128).map_err(fail)?;
        let table = if formula {
            let bundle = gl_zeta_for_form(&f, n).map_err(fail)?;
            bundle.check().map_err(fail)?;
            let column = |s: &latzeta::TruncatedSeries| s.to_integers().map(|v| v.into_iter().map(|x| x as u64).collect());
            CoefficientTable { form: f, sl: column(&bundle.sl).map_err(fail)?, gl: column(&bundle.gl).map_err(fail)? }
        } else {
            brute_coefficients(&f, n, false).map_err(fail)?
        };
        // SAFETY: checked non-null above; the caller guarantees validity.
        unsafe { *out = Box::into_raw(Box::new(LzSeries(table))) };
        Ok(())
    })
}

/// Coefficients up to `n` from the closed formulas for the form `(a, b, c)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lz_formula_series_new(a: i64, b: i64, c: i64, n: usize, out: *mut *mut LzSeries) -> LzStatus {
    series_new(a, b, c, n, out, true)
}

/// Coefficients up to `n` by sublattice enumeration for the form `(a, b, c)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lz_brute_series_new(a: i64, b: i64, c: i64, n: usize, out: *mut *mut LzSeries) -> LzStatus {
    series_new(a, b, c, n, out, false)
}

/// Truncation bound `N`, or 0 for a null handle.
///
/// # Safety
/// `series` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lz_series_len(series: *const LzSeries) -> usize {
    series.as_ref().map_or(0, |s| s.0.max_index())
}

/// Coefficient of `m^{-s}` for `1 ≤ m ≤ N`.
///
/// # Safety
/// `series` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lz_series_coeff(series: *const LzSeries, mode: LzMode, m: usize, out: *mut u64) -> LzStatus {
    guard(|| {
        let s = series.as_ref().ok_or_else(|| null("series"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let n = s.0.max_index();
        if m == 0 || m > n {
            return Err(out_of_range(format!("index {m} outside 1..={n}")));
        }
        let column = match mode {
            LzMode::Sl => &s.0.sl,
            LzMode::Gl => &s.0.gl,
        };
        *out = column[m - 1];
        Ok(())
    })
}

/// # Safety
/// `series` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lz_series_free(series: *mut LzSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

//! C interface to the hemiring library.
//!
//! Structures and elements cross the boundary as opaque handles. Every call
//! returns an [`HmStatus`]; on failure the message is available from
//! [`hm_last_error_message`] on the same thread. Strings handed out by this
//! library are released with [`hm_string_free`].

use std::cell::RefCell;
use std::cmp::Ordering;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use hemiring::error::Error;
use hemiring::laws::check_hemiring_laws;
use hemiring::registry::{AnyElement, AnyStructure};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HmStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    UnknownStructure = 3,
    ParseError = 4,
    /// The operation does not exist in the structure, or the operands belong elsewhere.
    NotApplicable = 5,
    Incomparable = 6,
    Panic = 7,
}

/// A registered ordered structure.
pub struct HmStructure {
    inner: AnyStructure,
}

/// An element of some [`HmStructure`].
pub struct HmElement {
    inner: AnyElement,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("no interior nul"));
}

fn fail(status: HmStatus, msg: impl Into<String>) -> HmStatus {
    set_error(msg);
    status
}

fn from_error(e: &Error) -> HmStatus {
    let status = match e {
        Error::UnknownStructure(_) => HmStatus::UnknownStructure,
        Error::Parse(_) => HmStatus::ParseError,
        _ => HmStatus::NotApplicable,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> HmStatus) -> HmStatus {
    set_error("");
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(HmStatus::Panic, "internal panic"))
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, HmStatus> {
    if p.is_null() {
        return Err(fail(HmStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(HmStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, HmStatus> {
    p.as_ref().ok_or_else(|| fail(HmStatus::NullArgument, "null handle"))
}

unsafe fn put<T>(out: *mut T, value: T) -> HmStatus {
    if out.is_null() {
        return fail(HmStatus::NullArgument, "null output pointer");
    }
    out.write(value);
    HmStatus::Ok
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread; empty after a success.
///
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn hm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Resolves an identifier such as `rational`, `z1p:2`, `zx` or `maxtimes-qpos`.
///
/// # Safety
/// `id` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn hm_structure_new(id: *const c_char, out: *mut *mut HmStructure) -> HmStatus {
    guard(|| {
        let id = tri!(text(id));
        match AnyStructure::resolve(id) {
            Ok(inner) => put(out, Box::into_raw(Box::new(HmStructure { inner }))),
            Err(e) => from_error(&e),
        }
    })
}

/// # Safety
/// `s` must come from [`hm_structure_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn hm_structure_free(s: *mut HmStructure) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Canonical identifier of the structure; free with [`hm_string_free`].
///
/// # Safety
/// `s` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn hm_structure_id(s: *const HmStructure, out: *mut *mut c_char) -> HmStatus {
    guard(|| {
        let s = tri!(handle(s));
        put(out, c_string(s.inner.id()))
    })
}

/// Parses element text in the structure.
///
/// # Safety
/// `s` must be a live handle, `text` NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hm_element_parse(
    s: *const HmStructure,
    text_in: *const c_char,
    out: *mut *mut HmElement,
) -> HmStatus {
    guard(|| {
        let s = tri!(handle(s));
        let t = tri!(text(text_in));
        match s.inner.parse(t) {
            Ok(inner) => put(out, Box::into_raw(Box::new(HmElement { inner }))),
            Err(e) => fail(HmStatus::ParseError, e.to_string()),
        }
    })
}

/// # Safety
/// `e` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn hm_element_free(e: *mut HmElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Canonical text of an element; free with [`hm_string_free`].
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hm_element_render(
    s: *const HmStructure,
    e: *const HmElement,
    out: *mut *mut c_char,
) -> HmStatus {
    guard(|| {
        let (s, e) = (tri!(handle(s)), tri!(handle(e)));
        match s.inner.render(&e.inner) {
            Ok(t) => put(out, c_string(t)),
            Err(err) => from_error(&err),
        }
    })
}

unsafe fn binary(
    s: *const HmStructure,
    a: *const HmElement,
    b: *const HmElement,
    out: *mut *mut HmElement,
    op: fn(&AnyStructure, &AnyElement, &AnyElement) -> Result<AnyElement, Error>,
) -> HmStatus {
    guard(|| {
        let (s, a, b) = (tri!(handle(s)), tri!(handle(a)), tri!(handle(b)));
        match op(&s.inner, &a.inner, &b.inner) {
            Ok(inner) => put(out, Box::into_raw(Box::new(HmElement { inner }))),
            Err(e) => from_error(&e),
        }
    })
}

/// `a + b`.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hm_element_add(
    s: *const HmStructure,
    a: *const HmElement,
    b: *const HmElement,
    out: *mut *mut HmElement,
) -> HmStatus {
    binary(s, a, b, out, AnyStructure::add)
}

/// `a · b`.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hm_element_mul(
    s: *const HmStructure,
    a: *const HmElement,
    b: *const HmElement,
    out: *mut *mut HmElement,
) -> HmStatus {
    binary(s, a, b, out, AnyStructure::mul)
}

/// `−a`; `NotApplicable` outside rings.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hm_element_neg(
    s: *const HmStructure,
    a: *const HmElement,
    out: *mut *mut HmElement,
) -> HmStatus {
    guard(|| {
        let (s, a) = (tri!(handle(s)), tri!(handle(a)));
        match s.inner.neg(&a.inner) {
            Ok(inner) => put(out, Box::into_raw(Box::new(HmElement { inner }))),
            Err(e) => from_error(&e),
        }
    })
}

/// Writes −1, 0 or 1 for `a < b`, `a = b`, `a > b`.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hm_element_compare(
    s: *const HmStructure,
    a: *const HmElement,
    b: *const HmElement,
    out: *mut c_int,
) -> HmStatus {
    guard(|| {
        let (s, a, b) = (tri!(handle(s)), tri!(handle(a)), tri!(handle(b)));
        match s.inner.compare(&a.inner, &b.inner) {
            Ok(Some(o)) => put(
                out,
                match o {
                    Ordering::Less => -1,
                    Ordering::Equal => 0,
                    Ordering::Greater => 1,
                },
            ),
            Ok(None) => fail(HmStatus::Incomparable, "elements are incomparable"),
            Err(e) => from_error(&e),
        }
    })
}

/// Runs the law suite and writes the total number of failures.
///
/// # Safety
/// `s` must be a live handle and `failures` writable.
#[no_mangle]
pub unsafe extern "C" fn hm_check_laws(
    s: *const HmStructure,
    samples: usize,
    seed: u64,
    failures: *mut usize,
) -> HmStatus {
    guard(|| {
        let s = tri!(handle(s));
        let count = hemiring::dispatch!(&s.inner, st => check_hemiring_laws(st, samples, seed).failure_count());
        put(failures, count)
    })
}

/// Runs a command line (`argv[0]` is the program name).
///
/// Writes the exit code and the standard output text; free the text with
/// [`hm_string_free`]. Standard error text becomes the last error message.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn hm_cli_run(
    argc: c_int,
    argv: *const *const c_char,
    exit_code: *mut c_int,
    stdout_text: *mut *mut c_char,
) -> HmStatus {
    guard(|| {
        if argv.is_null() || argc < 0 || exit_code.is_null() || stdout_text.is_null() {
            return fail(HmStatus::NullArgument, "null argument");
        }
        let mut args = Vec::with_capacity(argc as usize);
        for i in 0..argc as usize {
            args.push(tri!(text(*argv.add(i))).to_string());
        }
        let result = hemiring::cli::run(args);
        exit_code.write(result.exit_code);
        stdout_text.write(c_string(result.stdout));
        set_error(result.stderr.trim_end());
        HmStatus::Ok
    })
}

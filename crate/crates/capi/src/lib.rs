//! C ABI for the matroid toolkit.
//!
//! Matroids are opaque handles created from `cyclic-flats-v1` JSON (or
//! exact-matrix JSON) and freed with [`matroid_free`]. Every function
//! returns a [`MatroidStatus`]; results travel through out-pointers.
//! Strings returned by the library are heap-allocated and must be
//! released with [`matroid_string_free`]. On any non-OK status a
//! human-readable message is available from [`matroid_last_error`].
//!
//! Sets of elements are passed as comma-separated label lists, exactly
//! as on the CLI (`"a,a',b"`); the empty string is the empty set.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use matroid_core::io::{MatrixFile, MatroidFile, Report};
use matroid_core::kernel::{ElementSet, Matroid};
use matroid_core::verify::CheckName;
use matroid_core::Error;

/// Status codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum MatroidStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed JSON or a document that does not match its schema.
    ParseError = 3,
    /// A domain error: invalid presentation, unknown label, bad
    /// precondition, and so on.
    DomainError = 4,
    /// The library panicked; this is a bug worth reporting.
    InternalError = 5,
}

/// Opaque matroid handle.
pub struct MatroidHandle {
    inner: Matroid,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl std::fmt::Display) {
    let text = CString::new(message.to_string().replace('\0', " "))
        .unwrap_or_else(|_| CString::new("error").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn status_of(err: &Error) -> MatroidStatus {
    match err {
        Error::Json(_) | Error::Format { .. } => MatroidStatus::ParseError,
        _ => MatroidStatus::DomainError,
    }
}

fn guard<F: FnOnce() -> MatroidStatus>(body: F) -> MatroidStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            MatroidStatus::InternalError
        }
    }
}

/// # Safety
/// `ptr` must be null or a valid NUL-terminated C string.
unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, MatroidStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(MatroidStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        MatroidStatus::InvalidUtf8
    })
}

unsafe fn handle_ref<'a>(ptr: *const MatroidHandle) -> Result<&'a Matroid, MatroidStatus> {
    if ptr.is_null() {
        set_error("null matroid handle");
        return Err(MatroidStatus::NullArgument);
    }
    Ok(&(*ptr).inner)
}

fn write_out<T>(out: *mut T, value: T) -> MatroidStatus {
    if out.is_null() {
        set_error("null output pointer");
        return MatroidStatus::NullArgument;
    }
    unsafe { out.write(value) };
    MatroidStatus::Ok
}

fn write_string(out: *mut *mut c_char, s: String) -> MatroidStatus {
    let c = match CString::new(s) {
        Ok(c) => c,
        Err(_) => {
            set_error("output contained a NUL byte");
            return MatroidStatus::InternalError;
        }
    };
    write_out(out, c.into_raw())
}

fn parse_set(m: &Matroid, csv: &str) -> Result<ElementSet, Error> {
    let labels: Vec<&str> = csv.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    ElementSet::from_labels(m.ground(), labels)
}

/// Parse a `cyclic-flats-v1` JSON document into a matroid handle.
/// The presentation is validated against the cyclic-flat axioms.
///
/// # Safety
/// `json` must be a valid NUL-terminated C string; `out` must point to
/// writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn matroid_from_json(
    json: *const c_char,
    out: *mut *mut MatroidHandle,
) -> MatroidStatus {
    guard(|| {
        let json = match read_str(json) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match MatroidFile::parse(json).and_then(|f| f.to_matroid()) {
            Ok(m) => write_out(out, Box::into_raw(Box::new(MatroidHandle { inner: m }))),
            Err(e) => {
                set_error(&e);
                status_of(&e)
            }
        }
    })
}

/// Parse an `exact-matrix-v1` JSON document and build its column
/// matroid.
///
/// # Safety
/// As for [`matroid_from_json`].
#[no_mangle]
pub unsafe extern "C" fn matroid_from_matrix_json(
    json: *const c_char,
    out: *mut *mut MatroidHandle,
) -> MatroidStatus {
    guard(|| {
        let json = match read_str(json) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let built = MatrixFile::parse(json)
            .and_then(|f| f.to_exact_matrix())
            .and_then(|a| matroid_core::linear::column_matroid(&a));
        match built {
            Ok(m) => write_out(out, Box::into_raw(Box::new(MatroidHandle { inner: m }))),
            Err(e) => {
                set_error(&e);
                status_of(&e)
            }
        }
    })
}

/// Release a matroid handle. Null is a no-op.
///
/// # Safety
/// `m` must be null or a pointer previously returned by one of the
/// constructors, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn matroid_free(m: *mut MatroidHandle) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Release a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or a string pointer produced by this library, not
/// yet freed.
#[no_mangle]
pub unsafe extern "C" fn matroid_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message for the most recent error on this thread.
///
/// # Safety
/// `out` must point to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn matroid_last_error(out: *mut *mut c_char) -> MatroidStatus {
    guard(|| {
        let message = LAST_ERROR
            .with(|slot| slot.borrow().clone())
            .map(|c| c.to_string_lossy().into_owned())
            .unwrap_or_default();
        write_string(out, message)
    })
}

/// Number of elements in the ground set.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn matroid_ground_size(
    m: *const MatroidHandle,
    out: *mut usize,
) -> MatroidStatus {
    guard(|| match handle_ref(m) {
        Ok(matroid) => write_out(out, matroid.size()),
        Err(status) => status,
    })
}

/// Rank of the whole matroid.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn matroid_rank(m: *const MatroidHandle, out: *mut u32) -> MatroidStatus {
    guard(|| match handle_ref(m) {
        Ok(matroid) => write_out(out, matroid.rank()),
        Err(status) => status,
    })
}

/// Number of cyclic flats in the presentation.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn matroid_cyclic_flat_count(
    m: *const MatroidHandle,
    out: *mut usize,
) -> MatroidStatus {
    guard(|| match handle_ref(m) {
        Ok(matroid) => write_out(out, matroid.presentation().len()),
        Err(status) => status,
    })
}

/// Rank of the set given as a comma-separated label list.
///
/// # Safety
/// `m` must be a live handle; `set` a valid C string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn matroid_rank_of(
    m: *const MatroidHandle,
    set: *const c_char,
    out: *mut u32,
) -> MatroidStatus {
    guard(|| {
        let matroid = match handle_ref(m) {
            Ok(x) => x,
            Err(status) => return status,
        };
        let csv = match read_str(set) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match parse_set(matroid, csv).and_then(|x| matroid.rank_of(&x)) {
            Ok(rank) => write_out(out, rank),
            Err(e) => {
                set_error(&e);
                status_of(&e)
            }
        }
    })
}

/// Closure of the given set, returned as a comma-separated label list.
///
/// # Safety
/// `m` must be a live handle; `set` a valid C string; `out` writable.
/// The result string must be freed with [`matroid_string_free`].
#[no_mangle]
pub unsafe extern "C" fn matroid_closure(
    m: *const MatroidHandle,
    set: *const c_char,
    out: *mut *mut c_char,
) -> MatroidStatus {
    guard(|| {
        let matroid = match handle_ref(m) {
            Ok(x) => x,
            Err(status) => return status,
        };
        let csv = match read_str(set) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match parse_set(matroid, csv).and_then(|x| matroid.closure(&x)) {
            Ok(cl) => write_string(out, cl.label_vec().join(",")),
            Err(e) => {
                set_error(&e);
                status_of(&e)
            }
        }
    })
}

/// Whether the given set is independent.
///
/// # Safety
/// `m` must be a live handle; `set` a valid C string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn matroid_is_independent(
    m: *const MatroidHandle,
    set: *const c_char,
    out: *mut bool,
) -> MatroidStatus {
    guard(|| {
        let matroid = match handle_ref(m) {
            Ok(x) => x,
            Err(status) => return status,
        };
        let csv = match read_str(set) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match parse_set(matroid, csv).and_then(|x| matroid.is_independent(&x)) {
            Ok(v) => write_out(out, v),
            Err(e) => {
                set_error(&e);
                status_of(&e)
            }
        }
    })
}

/// Serialize the matroid back to `cyclic-flats-v1` JSON.
///
/// # Safety
/// `m` must be a live handle; `out` writable. Free the result with
/// [`matroid_string_free`].
#[no_mangle]
pub unsafe extern "C" fn matroid_to_json(
    m: *const MatroidHandle,
    out: *mut *mut c_char,
) -> MatroidStatus {
    guard(|| match handle_ref(m) {
        Ok(matroid) => write_string(out, MatroidFile::from_matroid(matroid).to_json_string()),
        Err(status) => status,
    })
}

/// Run the cyclic-flat axiom checker on a `cyclic-flats-v1` document
/// without building a matroid. Returns a report as JSON; the document
/// being invalid is reported in the JSON, not as an error status.
///
/// # Safety
/// `json` a valid C string; `out` writable. Free the result with
/// [`matroid_string_free`].
#[no_mangle]
pub unsafe extern "C" fn matroid_check_axioms(
    json: *const c_char,
    out: *mut *mut c_char,
) -> MatroidStatus {
    guard(|| {
        let json = match read_str(json) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let parts = MatroidFile::parse(json).and_then(|f| f.to_parts());
        let (_, entries) = match parts {
            Ok(p) => p,
            Err(e) => {
                set_error(&e);
                return status_of(&e);
            }
        };
        let report = match matroid_core::axioms::check_z_axioms_entries(&entries) {
            Ok(()) => serde_report("check-axioms", true, None),
            Err(violations) => {
                let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
                serde_report("check-axioms", false, Some(list))
            }
        };
        write_string(out, report)
    })
}

fn serde_report(command: &str, ok: bool, violations: Option<Vec<String>>) -> String {
    use matroid_core::io::Check;
    let mut report = Report::new(
        command,
        vec![Check::compare("axioms", "valid", if ok { "valid" } else { "invalid" })],
    );
    if let Some(v) = violations {
        report = report.with_witnesses(serde_json::json_from_violations(v));
    }
    report.to_json_string()
}

/// Run one named check of the built-in verification suite ("vamos",
/// "counterexample", "planes3", "planes4", "ip4", "bundle-modular",
/// "lset") and return its report as JSON.
///
/// # Safety
/// `check` a valid C string; `out` writable. Free the result with
/// [`matroid_string_free`].
#[no_mangle]
pub unsafe extern "C" fn matroid_paper_verify(
    check: *const c_char,
    out: *mut *mut c_char,
) -> MatroidStatus {
    guard(|| {
        let name = match read_str(check) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let Some(check) = CheckName::parse(name) else {
            set_error(format!("unknown check `{name}`"));
            return MatroidStatus::DomainError;
        };
        write_string(out, matroid_core::verify::run_check(check).to_json_string())
    })
}

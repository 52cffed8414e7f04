//! C ABI for the weilform engine. Documents are opaque handles, reports and
//! diagnostics travel as JSON strings, and statuses mirror the CLI's exit
//! codes so language bindings can share documentation with the command line.
//!
//! Ownership rules: every non-null string written through an out parameter
//! belongs to the caller and must be released with `weilform_string_free`;
//! every document handle must be released with `weilform_document_free`.
//! Out parameters are reset to null on entry, so after any call they hold
//! either null or a live string. No call unwinds across the boundary; a
//! caught panic is reported as `WEILFORM_STATUS_PANIC` with nothing written.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use serde_json::json;
use weilform::{
    classical_derivative_check, from_classical, hom_check, prolong_rational, run_suite,
    validate_form, AlgebraCtx, Document, FormError, Report,
};

/// Outcome of a call. `OK` and `LAW_FAILURE` both deliver a JSON report
/// through the out parameter; `INVALID_INPUT` delivers a diagnostic message
/// instead. The first three values match the CLI's exit codes.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WeilformStatus {
    /// The operation ran and every law entry passed.
    Ok = 0,
    /// The operation ran and at least one law entry failed.
    LawFailure = 1,
    /// The document, a name in it, or a string argument could not be used;
    /// the out string holds the diagnostic.
    InvalidInput = 2,
    /// A required pointer argument was null; nothing was written.
    NullArgument = 3,
    /// An internal invariant broke mid-call; nothing was written.
    Panic = 4,
}

/// An opaque parsed document of named algebras, homs, maps, fields, and
/// points. Create with `weilform_document_builtin` or
/// `weilform_document_parse`; release with `weilform_document_free`.
pub struct WeilformDocument {
    inner: Document,
}

/// Reports and diagnostics never contain interior NULs; if one ever sneaks
/// in through user-supplied names, blank it rather than truncate or abort.
fn into_raw_c(s: String) -> *mut c_char {
    let owned = match CString::new(s) {
        Ok(owned) => owned,
        Err(err) => {
            let bytes: Vec<u8> = err
                .into_vec()
                .into_iter()
                .map(|b| if b == 0 { b' ' } else { b })
                .collect();
            CString::new(bytes).expect("interior NULs were just replaced")
        }
    };
    owned.into_raw()
}

unsafe fn write_string(out: *mut *mut c_char, s: String) {
    if !out.is_null() {
        unsafe { *out = into_raw_c(s) };
    }
}

unsafe fn reset(out: *mut *mut c_char) {
    if !out.is_null() {
        unsafe { *out = std::ptr::null_mut() };
    }
}

/// Read a required UTF-8 string argument, writing the diagnostic for the
/// caller when the bytes are not UTF-8.
unsafe fn read_name(
    ptr: *const c_char,
    what: &str,
    out: *mut *mut c_char,
) -> Result<String, WeilformStatus> {
    if ptr.is_null() {
        return Err(WeilformStatus::NullArgument);
    }
    match unsafe { CStr::from_ptr(ptr) }.to_str() {
        Ok(s) => Ok(s.to_string()),
        Err(_) => {
            unsafe { write_string(out, format!("{what} is not valid UTF-8")) };
            Err(WeilformStatus::InvalidInput)
        }
    }
}

/// Shared shape of every report-producing operation: null checks, panic
/// containment, and the status/out-string convention.
unsafe fn report_op(
    doc: *const WeilformDocument,
    out: *mut *mut c_char,
    op: impl FnOnce(&Document) -> Result<Report, String>,
) -> WeilformStatus {
    unsafe { reset(out) };
    let Some(handle) = (unsafe { doc.as_ref() }) else {
        return WeilformStatus::NullArgument;
    };
    match catch_unwind(AssertUnwindSafe(|| op(&handle.inner))) {
        Ok(Ok(report)) => {
            unsafe { write_string(out, report.to_json()) };
            if report.all_passed() {
                WeilformStatus::Ok
            } else {
                WeilformStatus::LawFailure
            }
        }
        Ok(Err(message)) => {
            unsafe { write_string(out, message) };
            WeilformStatus::InvalidInput
        }
        Err(_) => WeilformStatus::Panic,
    }
}

/// Like `report_op` for operations that produce a plain JSON value rather
/// than a pass/fail report.
unsafe fn string_op(
    doc: *const WeilformDocument,
    out: *mut *mut c_char,
    op: impl FnOnce(&Document) -> Result<String, String>,
) -> WeilformStatus {
    unsafe { reset(out) };
    let Some(handle) = (unsafe { doc.as_ref() }) else {
        return WeilformStatus::NullArgument;
    };
    match catch_unwind(AssertUnwindSafe(|| op(&handle.inner))) {
        Ok(Ok(text)) => {
            unsafe { write_string(out, text) };
            WeilformStatus::Ok
        }
        Ok(Err(message)) => {
            unsafe { write_string(out, message) };
            WeilformStatus::InvalidInput
        }
        Err(_) => WeilformStatus::Panic,
    }
}

/// The built-in document of named algebras, homs, maps, fields, and points.
/// Returns null only if an internal invariant breaks.
#[no_mangle]
pub extern "C" fn weilform_document_builtin() -> *mut WeilformDocument {
    catch_unwind(|| {
        Box::into_raw(Box::new(WeilformDocument {
            inner: Document::builtin(),
        }))
    })
    .unwrap_or(std::ptr::null_mut())
}

/// Parse a JSON document. On success writes the handle to `out_doc` and
/// returns OK; on failure writes null to `out_doc`, the diagnostic to
/// `out_error`, and returns INVALID_INPUT.
///
/// # Safety
/// `json_text` must be a NUL-terminated string, `out_doc` must point to
/// writable memory, and `out_error` must be null or point to writable
/// memory.
#[no_mangle]
pub unsafe extern "C" fn weilform_document_parse(
    json_text: *const c_char,
    out_doc: *mut *mut WeilformDocument,
    out_error: *mut *mut c_char,
) -> WeilformStatus {
    unsafe { reset(out_error) };
    if out_doc.is_null() {
        return WeilformStatus::NullArgument;
    }
    unsafe { *out_doc = std::ptr::null_mut() };
    let text = match unsafe { read_name(json_text, "the document", out_error) } {
        Ok(text) => text,
        Err(status) => return status,
    };
    match catch_unwind(|| Document::from_json(&text)) {
        Ok(Ok(document)) => {
            unsafe { *out_doc = Box::into_raw(Box::new(WeilformDocument { inner: document })) };
            WeilformStatus::Ok
        }
        Ok(Err(err)) => {
            unsafe { write_string(out_error, err.to_string()) };
            WeilformStatus::InvalidInput
        }
        Err(_) => WeilformStatus::Panic,
    }
}

/// Release a document handle. Null is a no-op.
///
/// # Safety
/// `doc` must be null or a handle from `weilform_document_builtin` or
/// `weilform_document_parse` that has not been freed already.
#[no_mangle]
pub unsafe extern "C" fn weilform_document_free(doc: *mut WeilformDocument) {
    if !doc.is_null() {
        drop(unsafe { Box::from_raw(doc) });
    }
}

/// Release a string written by any function here. Null is a no-op.
///
/// # Safety
/// `s` must be null or a string obtained from this library that has not
/// been freed already.
#[no_mangle]
pub unsafe extern "C" fn weilform_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Run the full law suite: `samples` random instances per law, every random
/// draw derived from `seed`. The report lands in `out_json`; equal seeds
/// give byte-identical reports.
///
/// # Safety
/// `doc` must be a live document handle; `out_json` must be null or point
/// to writable memory.
#[no_mangle]
pub unsafe extern "C" fn weilform_check_all(
    doc: *const WeilformDocument,
    seed: u64,
    samples: usize,
    out_json: *mut *mut c_char,
) -> WeilformStatus {
    unsafe { report_op(doc, out_json, |d| Ok(run_suite(d, seed, samples))) }
}

/// Check that every hom declared in the document sends each relation of its
/// source algebra to zero.
///
/// # Safety
/// `doc` must be a live document handle; `out_json` must be null or point
/// to writable memory.
#[no_mangle]
pub unsafe extern "C" fn weilform_hom_check(
    doc: *const WeilformDocument,
    seed: u64,
    out_json: *mut *mut c_char,
) -> WeilformStatus {
    unsafe { report_op(doc, out_json, |d| Ok(hom_check(d, seed))) }
}

/// Build the form attached to the named field and check multilinearity and
/// alternation on `samples` random microcubes.
///
/// # Safety
/// `doc` must be a live document handle, `name` a NUL-terminated string;
/// `out_json` must be null or point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn weilform_form_validate(
    doc: *const WeilformDocument,
    name: *const c_char,
    seed: u64,
    samples: usize,
    out_json: *mut *mut c_char,
) -> WeilformStatus {
    let name = match unsafe { read_name(name, "the field name", out_json) } {
        Ok(name) => name,
        Err(status) => return status,
    };
    unsafe {
        report_op(doc, out_json, move |d| {
            let field = d
                .fields
                .get(&name)
                .ok_or_else(|| format!("no field named {name} in the document"))?;
            match from_classical(field) {
                Ok(form) => Ok(validate_form(&form, samples, seed)),
                Err(FormError::Invalid(report)) => Ok(*report),
                Err(err) => Err(err.to_string()),
            }
        })
    }
}

/// Differentiate the named field along both routes, the boundary integral
/// and the symbolic derivative, and compare them on `samples` random
/// microcubes.
///
/// # Safety
/// `doc` must be a live document handle, `name` a NUL-terminated string;
/// `out_json` must be null or point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn weilform_form_derivative_check(
    doc: *const WeilformDocument,
    name: *const c_char,
    seed: u64,
    samples: usize,
    out_json: *mut *mut c_char,
) -> WeilformStatus {
    let name = match unsafe { read_name(name, "the field name", out_json) } {
        Ok(name) => name,
        Err(status) => return status,
    };
    unsafe {
        report_op(doc, out_json, move |d| {
            let field = d
                .fields
                .get(&name)
                .ok_or_else(|| format!("no field named {name} in the document"))?;
            match classical_derivative_check(field, samples, seed) {
                Ok(report) => Ok(report),
                Err(FormError::Invalid(report)) => Ok(*report),
                Err(err) => Err(err.to_string()),
            }
        })
    }
}

/// Describe the named algebra as JSON: presentation, and either its basis
/// and dimension or a notice that it is not finite-dimensional.
///
/// # Safety
/// `doc` must be a live document handle, `name` a NUL-terminated string;
/// `out_json` must be null or point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn weilform_algebra_show(
    doc: *const WeilformDocument,
    name: *const c_char,
    out_json: *mut *mut c_char,
) -> WeilformStatus {
    let name = match unsafe { read_name(name, "the algebra name", out_json) } {
        Ok(name) => name,
        Err(status) => return status,
    };
    unsafe {
        string_op(doc, out_json, move |d| {
            let algebra = d
                .algebras
                .get(&name)
                .ok_or_else(|| format!("no algebra named {name} in the document"))?;
            let value = match algebra.weil_basis() {
                Ok(basis) => {
                    let ctx = AlgebraCtx::rational(algebra.clone());
                    let rendered: Vec<String> = basis
                        .iter()
                        .map(|m| ctx.monomial_elem(m.clone()).to_string())
                        .collect();
                    json!({
                        "name": name,
                        "algebra": algebra.to_string(),
                        "dimension": basis.len(),
                        "basis": rendered,
                    })
                }
                Err(err) => json!({
                    "name": name,
                    "algebra": algebra.to_string(),
                    "generators": algebra.generator_names(),
                    "notice": err.to_string(),
                }),
            };
            Ok(serde_json::to_string_pretty(&value).expect("plain object serializes"))
        })
    }
}

/// Prolong the named point along the named map and return the image
/// coordinates as JSON.
///
/// # Safety
/// `doc` must be a live document handle, `map` and `point` NUL-terminated
/// strings; `out_json` must be null or point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn weilform_prolong_eval(
    doc: *const WeilformDocument,
    map: *const c_char,
    point: *const c_char,
    out_json: *mut *mut c_char,
) -> WeilformStatus {
    let map_name = match unsafe { read_name(map, "the map name", out_json) } {
        Ok(name) => name,
        Err(status) => return status,
    };
    let point_name = match unsafe { read_name(point, "the point name", out_json) } {
        Ok(name) => name,
        Err(status) => return status,
    };
    unsafe {
        string_op(doc, out_json, move |d| {
            let map = d
                .smooth_maps
                .get(&map_name)
                .ok_or_else(|| format!("no map named {map_name} in the document"))?;
            let point = d
                .points
                .get(&point_name)
                .ok_or_else(|| format!("no point named {point_name} in the document"))?;
            let result = prolong_rational(map, point).map_err(|e| e.to_string())?;
            let coords: Vec<String> = result.coords().iter().map(|c| c.to_string()).collect();
            Ok(serde_json::to_string_pretty(&json!({
                "map": map_name,
                "point": point_name,
                "algebra": result.algebra().to_string(),
                "coords": coords,
            }))
            .expect("plain object serializes"))
        })
    }
}

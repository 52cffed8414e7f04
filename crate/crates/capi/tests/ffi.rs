//! Drives the C surface the way a foreign caller would: ownership
//! transfers, status codes, and the JSON payloads, all through the extern
//! functions rather than the underlying library.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use weilform_capi::{
    weilform_algebra_show, weilform_check_all, weilform_document_builtin, weilform_document_free,
    weilform_document_parse, weilform_form_derivative_check, weilform_form_validate,
    weilform_hom_check, weilform_prolong_eval, weilform_string_free, WeilformDocument,
    WeilformStatus,
};

/// Take ownership of a returned string, releasing the C allocation.
unsafe fn claim(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null(), "expected the call to write a string");
    let text = unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .expect("returned strings are UTF-8")
        .to_string();
    unsafe { weilform_string_free(ptr) };
    text
}

#[test]
fn builtin_suite_passes_and_reports_json() {
    unsafe {
        let doc = weilform_document_builtin();
        assert!(!doc.is_null());
        let mut out: *mut c_char = ptr::null_mut();
        let status = weilform_check_all(doc, 42, 3, &mut out);
        assert_eq!(status, WeilformStatus::Ok);
        let report: serde_json::Value =
            serde_json::from_str(&claim(out)).expect("the report is JSON");
        assert_eq!(report["failed"], 0);
        assert!(report["passed"].as_u64().expect("passed is a count") > 0);
        assert_eq!(report["seed"], 42);
        weilform_document_free(doc);
    }
}

#[test]
fn malformed_json_is_an_input_error() {
    unsafe {
        let text = CString::new("{ not json").expect("literal has no NULs");
        let mut doc: *mut WeilformDocument = ptr::null_mut();
        let mut err: *mut c_char = ptr::null_mut();
        let status = weilform_document_parse(text.as_ptr(), &mut doc, &mut err);
        assert_eq!(status, WeilformStatus::InvalidInput);
        assert!(doc.is_null());
        let message = claim(err);
        assert!(message.contains("not valid JSON"), "got: {message}");
    }
}

#[test]
fn broken_hom_reports_a_law_failure() {
    let text = r#"{
        "version": "1",
        "algebras": { "line": { "generators": ["X"], "relations": ["X^2"] } },
        "homs": { "broken": { "source": "line", "target": "line", "images": ["1 + X"] } }
    }"#;
    unsafe {
        let c_text = CString::new(text).expect("literal has no NULs");
        let mut doc: *mut WeilformDocument = ptr::null_mut();
        let status = weilform_document_parse(c_text.as_ptr(), &mut doc, ptr::null_mut());
        assert_eq!(status, WeilformStatus::Ok, "hom validation is deferred to the check");
        let mut out: *mut c_char = ptr::null_mut();
        let status = weilform_hom_check(doc, 7, &mut out);
        assert_eq!(status, WeilformStatus::LawFailure);
        let report = claim(out);
        assert!(
            report.contains("X^2"),
            "the witness names the violated relation: {report}"
        );
        weilform_document_free(doc);
    }
}

#[test]
fn unknown_names_are_input_errors_and_nulls_are_rejected() {
    unsafe {
        let doc = weilform_document_builtin();
        let name = CString::new("no-such-field").expect("literal has no NULs");
        let mut out: *mut c_char = ptr::null_mut();

        let status = weilform_form_validate(doc, name.as_ptr(), 0, 5, &mut out);
        assert_eq!(status, WeilformStatus::InvalidInput);
        assert!(claim(out).contains("no field named no-such-field"));

        let status = weilform_form_validate(ptr::null(), name.as_ptr(), 0, 5, &mut out);
        assert_eq!(status, WeilformStatus::NullArgument);
        assert!(out.is_null(), "nothing is written on a null document");

        let status = weilform_form_validate(doc, ptr::null(), 0, 5, &mut out);
        assert_eq!(status, WeilformStatus::NullArgument);

        weilform_document_free(doc);
    }
}

#[test]
fn form_checks_pass_on_the_builtin_document() {
    unsafe {
        let doc = weilform_document_builtin();
        let name = CString::new("x-dy").expect("literal has no NULs");
        let mut out: *mut c_char = ptr::null_mut();

        let status = weilform_form_validate(doc, name.as_ptr(), 0, 20, &mut out);
        assert_eq!(status, WeilformStatus::Ok);
        weilform_string_free(out);

        let status = weilform_form_derivative_check(doc, name.as_ptr(), 7, 20, &mut out);
        assert_eq!(status, WeilformStatus::Ok);
        let report: serde_json::Value =
            serde_json::from_str(&claim(out)).expect("the report is JSON");
        assert_eq!(report["failed"], 0);

        weilform_document_free(doc);
    }
}

#[test]
fn algebra_show_describes_the_pair_algebra() {
    unsafe {
        let doc = weilform_document_builtin();
        let name = CString::new("W_D(2)").expect("literal has no NULs");
        let mut out: *mut c_char = ptr::null_mut();
        let status = weilform_algebra_show(doc, name.as_ptr(), &mut out);
        assert_eq!(status, WeilformStatus::Ok);
        let value: serde_json::Value =
            serde_json::from_str(&claim(out)).expect("the description is JSON");
        assert_eq!(value["dimension"], 3);
        assert_eq!(value["algebra"], "k[X,Y]/(X^2, X*Y, Y^2)");
        weilform_document_free(doc);
    }
}

#[test]
fn prolong_eval_round_trips_known_coordinates() {
    unsafe {
        let doc = weilform_document_builtin();
        let map = CString::new("square-shift").expect("literal has no NULs");
        let point = CString::new("p-pair").expect("literal has no NULs");
        let mut out: *mut c_char = ptr::null_mut();
        let status = weilform_prolong_eval(doc, map.as_ptr(), point.as_ptr(), &mut out);
        assert_eq!(status, WeilformStatus::Ok);
        let value: serde_json::Value =
            serde_json::from_str(&claim(out)).expect("the result is JSON");
        let coords: Vec<&str> = value["coords"]
            .as_array()
            .expect("coords is an array")
            .iter()
            .map(|v| v.as_str().expect("each coordinate renders as a string"))
            .collect();
        assert_eq!(coords, ["4 + 2*X", "3 + 3*X + -Y"]);
        weilform_document_free(doc);
    }
}

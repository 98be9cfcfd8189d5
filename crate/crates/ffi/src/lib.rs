//! C ABI over `tangentad`. Objects cross the boundary as opaque handles;
//! every fallible call returns a [`TadStatus`] and leaves a message for
//! [`tad_last_error`]. Strings returned to the caller are released with
//! [`tad_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use tangentad::error::Error;
use tangentad::model_aux::fincat::{Bounds, FiniteCategory};
use tangentad::model_poly::PolyModel;
use tangentad::pie_limits::vf_via_pie;
use tangentad::report::Report;
use tangentad::suites;
use tangentad::vector_fields::{bracket, VectorField};

/// Result codes. The first four match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TadStatus {
    Ok = 0,
    CheckFailed = 1,
    InputError = 2,
    BoundExceeded = 3,
    NullPointer = 4,
    Panic = 5,
}

/// A diagram report.
pub struct TadReport(Report);

/// A polynomial vector field.
pub struct TadVectorField(VectorField<PolyModel>);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("nul bytes removed"));
}

fn status_of(e: &Error) -> TadStatus {
    match e {
        Error::Bound(_) => TadStatus::BoundExceeded,
        _ => TadStatus::InputError,
    }
}

/// Runs `body`, turning errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<TadStatus, (TadStatus, String)> + UnwindSafe) -> TadStatus {
    set_error("");
    match catch_unwind(body) {
        Ok(Ok(s)) => s,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            TadStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (TadStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (TadStatus, String)> {
    if p.is_null() {
        return Err((TadStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (TadStatus::InputError, format!("{what} is not UTF-8")))
}

unsafe fn out_arg<'a, T>(p: *mut *mut T) -> Result<&'a mut *mut T, (TadStatus, String)> {
    p.as_mut().ok_or((TadStatus::NullPointer, "output pointer is null".into()))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

fn report_status(r: &Report) -> TadStatus {
    if r.all_pass() {
        TadStatus::Ok
    } else {
        TadStatus::CheckFailed
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tad_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// The message of the last failed call on this thread; empty after a
/// success. Valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn tad_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Runs a named suite (`weil`, `poly`, `bracket`, ...). `samples == 0`
/// selects the suite's default, `mutation` may be null. On `Ok` or
/// `CheckFailed` a report is stored in `*out`.
///
/// # Safety
/// `suite` must be a valid C string, `mutation` null or a valid C string,
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tad_run_suite(
    suite: *const c_char,
    seed: u64,
    samples: usize,
    mutation: *const c_char,
    out: *mut *mut TadReport,
) -> TadStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = ptr::null_mut();
        let name = str_arg(suite, "suite")?;
        let mutation = if mutation.is_null() { None } else { Some(str_arg(mutation, "mutation")?) };
        let samples = (samples > 0).then_some(samples);
        let bounds = Bounds::from_env().map_err(lib_err)?;
        let rep = suites::run_named(name, seed, samples, 1e-9, &bounds, mutation).map_err(lib_err)?;
        let status = report_status(&rep);
        *out = Box::into_raw(Box::new(TadReport(rep)));
        Ok(status)
    })
}

/// Builds the vector fields of the finite category given as JSON via the
/// inserter and equifier and checks the comparison. `bounds` may be null
/// for the defaults (or `TANGENTAD_BOUNDS`).
///
/// # Safety
/// `category_json` must be a valid C string, `bounds` null or a valid C
/// string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tad_check_category(
    category_json: *const c_char,
    bounds: *const c_char,
    out: *mut *mut TadReport,
) -> TadStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = ptr::null_mut();
        let text = str_arg(category_json, "category")?;
        let bounds = if bounds.is_null() {
            Bounds::from_env()
        } else {
            Bounds::parse(str_arg(bounds, "bounds")?)
        }
        .map_err(lib_err)?;
        let c: FiniteCategory = serde_json::from_str(text).map_err(|e| lib_err(e.into()))?;
        bounds.check(&c, "category").map_err(lib_err)?;
        let rep = vf_via_pie(&c, &bounds).map_err(lib_err)?.report;
        let status = report_status(&rep);
        *out = Box::into_raw(Box::new(TadReport(rep)));
        Ok(status)
    })
}

/// Number of diagrams in the report; 0 for null.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tad_report_len(report: *const TadReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.len())
}

/// Number of failing diagrams; 0 for null.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tad_report_failures(report: *const TadReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.failures().len())
}

/// The report as a JSON array; null for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tad_report_json(report: *const TadReport) -> *mut c_char {
    match report.as_ref() {
        Some(r) => into_c_string(serde_json::to_string(&r.0).expect("report serializes")),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `report` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tad_report_free(report: *mut TadReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Parses a polynomial vector field `{"base": m, "section": <PolyMap>}` and
/// checks that it is a section of the projection.
///
/// # Safety
/// `json` must be a valid C string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tad_field_parse(json: *const c_char, out: *mut *mut TadVectorField) -> TadStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = ptr::null_mut();
        let text = str_arg(json, "field")?;
        let v: VectorField<PolyModel> = serde_json::from_str(text).map_err(|e| lib_err(e.into()))?;
        v.validate(&PolyModel::new()).map_err(|w| (TadStatus::InputError, w))?;
        *out = Box::into_raw(Box::new(TadVectorField(v)));
        Ok(TadStatus::Ok)
    })
}

/// The bracket `[u, v]`.
///
/// # Safety
/// `u` and `v` must be live handles, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tad_field_bracket(
    u: *const TadVectorField,
    v: *const TadVectorField,
    out: *mut *mut TadVectorField,
) -> TadStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = ptr::null_mut();
        let (Some(u), Some(v)) = (u.as_ref(), v.as_ref()) else {
            return Err((TadStatus::NullPointer, "field handle is null".into()));
        };
        if u.0.base != v.0.base {
            return Err((TadStatus::InputError, format!("fields over ℚ^{} and ℚ^{}", u.0.base, v.0.base)));
        }
        let b = bracket(&PolyModel::new(), &u.0, &v.0).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(TadVectorField(b)));
        Ok(TadStatus::Ok)
    })
}

/// The field in the parse format; null for a null handle.
///
/// # Safety
/// `field` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tad_field_json(field: *const TadVectorField) -> *mut c_char {
    match field.as_ref() {
        Some(f) => into_c_string(serde_json::to_string(&f.0).expect("field serializes")),
        None => ptr::null_mut(),
    }
}

/// Components of `v̂` in `v(x) = (x, v̂(x))`, as a JSON array of strings.
///
/// # Safety
/// `field` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tad_field_principal(field: *const TadVectorField) -> *mut c_char {
    match field.as_ref() {
        Some(f) => {
            let parts: Vec<String> = suites::principal(&f.0).iter().map(ToString::to_string).collect();
            into_c_string(serde_json::to_string(&parts).expect("strings serialize"))
        }
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `field` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tad_field_free(field: *mut TadVectorField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tad_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

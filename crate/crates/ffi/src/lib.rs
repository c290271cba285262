//! C ABI over the xdlab library.
//!
//! Every function returns an [`XdlStatus`]; on failure a message is kept per
//! thread and can be read with [`xdl_last_error`]. Strings returned by the
//! library must be released with [`xdl_string_free`], expressions with
//! [`xdl_expr_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use xdlab::cli::{report_csv, run_scenario, ScenarioConfig};
use xdlab::clifford::{clifford_residual, galilean_gammas, lorentz_gammas};
use xdlab::fieldexpr::{Coord, FieldExpr};
use xdlab::grid::Grid;
use xdlab::pauli::extra_field_consistency;
use xdlab::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XdlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Eval = 4,
    InvalidArgument = 5,
    DimensionTooLarge = 6,
    Config = 7,
    Internal = 8,
}

/// Opaque expression handle.
pub struct XdlExpr(FieldExpr);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XdlRepresentation {
    Lorentz = 0,
    Galilean = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: XdlStatus, msg: impl Into<String>) -> XdlStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> XdlStatus {
    match e {
        Error::Parse(_) => XdlStatus::Parse,
        Error::Eval(_) => XdlStatus::Eval,
        Error::DimensionTooLarge { .. } => XdlStatus::DimensionTooLarge,
        Error::Config { .. } => XdlStatus::Config,
        _ => XdlStatus::InvalidArgument,
    }
}

fn from_error(e: Error) -> XdlStatus {
    fail(status_of(&e), e.to_string())
}

/// Runs `f`, turning a panic into [`XdlStatus::Internal`].
fn guard(f: impl FnOnce() -> XdlStatus) -> XdlStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(XdlStatus::Internal, "internal panic"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, XdlStatus> {
    if s.is_null() {
        return Err(fail(XdlStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(XdlStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

fn give_string(s: String, out: *mut *mut c_char) -> XdlStatus {
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: callers check `out` for null before reaching here.
            unsafe { *out = c.into_raw() };
            XdlStatus::Ok
        }
        Err(_) => fail(XdlStatus::Internal, "output contains a nul byte"),
    }
}

/// Message for the last failing call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn xdl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn xdl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `src` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn xdl_expr_parse(src: *const c_char, out: *mut *mut XdlExpr) -> XdlStatus {
    guard(|| {
        if out.is_null() {
            return fail(XdlStatus::NullPointer, "null output pointer");
        }
        let src = match read_str(src) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match FieldExpr::parse(src) {
            Ok(e) => {
                *out = Box::into_raw(Box::new(XdlExpr(e)));
                XdlStatus::Ok
            }
            Err(e) => fail(XdlStatus::Parse, e.to_string()),
        }
    })
}

/// Evaluates at `point`, five values ordered x, y, z, w, t.
///
/// # Safety
/// `expr` must come from this library, `point` must hold five doubles.
#[no_mangle]
pub unsafe extern "C" fn xdl_expr_eval(expr: *const XdlExpr, point: *const f64, out: *mut f64) -> XdlStatus {
    guard(|| {
        if expr.is_null() || point.is_null() || out.is_null() {
            return fail(XdlStatus::NullPointer, "null argument");
        }
        let p: [f64; 5] = std::slice::from_raw_parts(point, 5).try_into().expect("five values");
        match (*expr).0.eval(&p) {
            Ok(v) => {
                *out = v;
                XdlStatus::Ok
            }
            Err(e) => fail(XdlStatus::Eval, e.to_string()),
        }
    })
}

/// Symbolic derivative; `axis` is 0..=4 for x, y, z, w, t.
///
/// # Safety
/// `expr` must come from this library and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn xdl_expr_diff(expr: *const XdlExpr, axis: u32, out: *mut *mut XdlExpr) -> XdlStatus {
    guard(|| {
        if expr.is_null() || out.is_null() {
            return fail(XdlStatus::NullPointer, "null argument");
        }
        let Some(var) = Coord::ALL.get(axis as usize) else {
            return fail(XdlStatus::InvalidArgument, format!("axis {axis} out of range 0..=4"));
        };
        *out = Box::into_raw(Box::new(XdlExpr((*expr).0.diff(*var))));
        XdlStatus::Ok
    })
}

/// # Safety
/// `expr` must come from this library; `out` receives a string for [`xdl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn xdl_expr_to_string(expr: *const XdlExpr, out: *mut *mut c_char) -> XdlStatus {
    guard(|| {
        if expr.is_null() || out.is_null() {
            return fail(XdlStatus::NullPointer, "null argument");
        }
        give_string((*expr).0.to_string(), out)
    })
}

/// # Safety
/// `expr` must be null or an unfreed handle from this library.
#[no_mangle]
pub unsafe extern "C" fn xdl_expr_free(expr: *mut XdlExpr) {
    if !expr.is_null() {
        drop(Box::from_raw(expr));
    }
}

/// Max deviation of the gamma anticommutators from twice the metric.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn xdl_clifford_residual(rep: XdlRepresentation, out: *mut f64) -> XdlStatus {
    guard(|| {
        if out.is_null() {
            return fail(XdlStatus::NullPointer, "null output pointer");
        }
        *out = match rep {
            XdlRepresentation::Lorentz => clifford_residual(&lorentz_gammas()),
            XdlRepresentation::Galilean => clifford_residual(&galilean_gammas()),
        };
        XdlStatus::Ok
    })
}

/// Residuals of MR against Mtz and OR against Psch for profile `omega` on a
/// `d`-dimensional cube with `n` points per side.
///
/// # Safety
/// `omega` must be a nul-terminated string; `out_mr` and `out_or` writable.
#[no_mangle]
pub unsafe extern "C" fn xdl_consistency_residual(
    omega: *const c_char,
    d: u32,
    n: u32,
    length: f64,
    m: f64,
    e: f64,
    out_mr: *mut f64,
    out_or: *mut f64,
) -> XdlStatus {
    guard(|| {
        if out_mr.is_null() || out_or.is_null() {
            return fail(XdlStatus::NullPointer, "null output pointer");
        }
        let src = match read_str(omega) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let result = FieldExpr::parse(src).map_err(Error::from).and_then(|omega| {
            let grid = Grid::cube(d as usize, n as usize, length)?;
            extra_field_consistency(&omega, d as usize, &grid, m, e)
        });
        match result {
            Ok((mr, or)) => {
                *out_mr = mr;
                *out_or = or;
                XdlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Runs a scenario given as TOML text and returns every check as CSV with
/// columns suite, check, anchor, value, tolerance, status. No files are
/// written. `suite` may be null to keep the suite named in the text.
/// `all_passed` (optional) receives 1 when no check failed.
///
/// # Safety
/// String arguments must be nul-terminated; `out_csv` must be writable.
#[no_mangle]
pub unsafe extern "C" fn xdl_run_scenario(
    config_toml: *const c_char,
    suite: *const c_char,
    seed: u64,
    out_csv: *mut *mut c_char,
    all_passed: *mut i32,
) -> XdlStatus {
    guard(|| {
        if out_csv.is_null() {
            return fail(XdlStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(config_toml) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let label = Path::new("<ffi>");
        let mut config: ScenarioConfig = match text.parse() {
            Ok(c) => c,
            Err(e) => return fail(XdlStatus::Config, format!("configuration error: {e}")),
        };
        if !suite.is_null() {
            match read_str(suite) {
                Ok(s) => config.suite = s.to_string(),
                Err(st) => return st,
            }
        }
        config.seed = seed;
        let scenario = match config.validate(label) {
            Ok(s) => s,
            Err(e) => return from_error(e),
        };
        let report = run_scenario(&scenario);
        if !all_passed.is_null() {
            *all_passed = report.passed() as i32;
        }
        match report_csv(&report) {
            Ok(csv) => give_string(csv, out_csv),
            Err(e) => from_error(e),
        }
    })
}

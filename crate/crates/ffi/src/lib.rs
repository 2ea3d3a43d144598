//! C interface to the `gdalg` engine.
//!
//! Every function returns a [`GdalgStatus`]. On failure the message is kept
//! per thread and can be read with [`gdalg_last_error`]. Strings handed out
//! by the library must be released with [`gdalg_string_free`]; presentations
//! with [`gdalg_presentation_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gdalg::expand::{verify_identity, ExpansionMap, Verdict};
use gdalg::operad::{component_dim, tideal_membership, Presentation};
use gdalg::{builtins, sgd, Error};

/// Result codes shared by all entry points.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GdalgStatus {
    Ok = 0,
    /// The computation succeeded and the answer is negative, e.g. an identity
    /// that does not hold.
    Mismatch = 1,
    NullPointer = 2,
    InvalidUtf8 = 3,
    Syntax = 4,
    InvalidArgument = 5,
    UnknownBuiltin = 6,
    Unsupported = 7,
    Io = 8,
    Internal = 9,
    Panic = 10,
}

impl From<&Error> for GdalgStatus {
    fn from(e: &Error) -> GdalgStatus {
        match e {
            Error::Syntax { .. } | Error::UnknownOp(_) | Error::Arity { .. } | Error::Json(_) => GdalgStatus::Syntax,
            Error::UnknownBuiltin(_) => GdalgStatus::UnknownBuiltin,
            Error::UnsupportedDegree(_)
            | Error::UnsupportedOp { .. }
            | Error::UnmappedOp(_)
            | Error::NonQuadratic(_) => GdalgStatus::Unsupported,
            Error::Io(_) => GdalgStatus::Io,
            Error::Internal(_) => GdalgStatus::Internal,
            _ => GdalgStatus::InvalidArgument,
        }
    }
}

/// A parsed operad presentation.
pub struct GdalgPresentation {
    inner: Presentation,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: GdalgStatus, msg: impl Into<String>) -> GdalgStatus {
    set_error(msg);
    status
}

fn from_engine(e: Error) -> GdalgStatus {
    fail(GdalgStatus::from(&e), e.to_string())
}

/// Runs `f`, clearing the error slot first and turning panics into a status.
fn guard(f: impl FnOnce() -> GdalgStatus) -> GdalgStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| p.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "panic".into());
        fail(GdalgStatus::Panic, msg)
    })
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, GdalgStatus> {
    if p.is_null() {
        return Err(fail(GdalgStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(GdalgStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn read_opt_str<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, GdalgStatus> {
    if p.is_null() {
        Ok(None)
    } else {
        read_str(p, what).map(Some)
    }
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> GdalgStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            GdalgStatus::Ok
        }
        Err(_) => fail(GdalgStatus::Internal, "output contains a NUL byte"),
    }
}

macro_rules! try_ffi {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! engine {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return from_engine(e),
        }
    };
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(GdalgStatus::NullPointer, concat!(stringify!($p), " is null"));
        })+
    };
}

/// The message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn gdalg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gdalg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The library version as a static string.
#[no_mangle]
pub extern "C" fn gdalg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// `dim SGD(n)` as a decimal string.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gdalg_sgd_dim(n: u32, out: *mut *mut c_char) -> GdalgStatus {
    guard(|| {
        non_null!(out);
        let d = engine!(sgd::sgd_dim(n as usize));
        write_string(out, d.to_string())
    })
}

/// Checks that an identity vanishes under an expansion map. `identity` is a
/// polynomial in the map's source operations or a built-in identity name;
/// `target` may be null. Returns `Ok` when the identity holds and `Mismatch`
/// when it does not. If `image` is non-null it receives the expanded image
/// (`"0"` when the identity holds).
///
/// # Safety
/// String arguments must be NUL-terminated; `image` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn gdalg_verify_identity(
    identity: *const c_char,
    map: *const c_char,
    target: *const c_char,
    image: *mut *mut c_char,
) -> GdalgStatus {
    guard(|| {
        let text = try_ffi!(read_str(identity, "identity"));
        let map_name = try_ffi!(read_str(map, "map"));
        let target = try_ffi!(read_opt_str(target, "target"));
        let m = engine!(ExpansionMap::by_name(map_name, target));
        let (poly, _) = engine!(builtins::resolve_poly(text, Some(&m.source)));
        let verdict = engine!(verify_identity(&poly, &m));
        let (status, rendered) = match verdict {
            Verdict::Holds => (GdalgStatus::Ok, "0".to_string()),
            Verdict::Fails(img) => (GdalgStatus::Mismatch, img.to_string()),
        };
        if !image.is_null() {
            let s = write_string(image, rendered);
            if s != GdalgStatus::Ok {
                return s;
            }
        }
        status
    })
}

/// Loads a built-in presentation by name, or a JSON presentation file.
///
/// # Safety
/// `name_or_path` must be NUL-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gdalg_presentation_load(
    name_or_path: *const c_char,
    out: *mut *mut GdalgPresentation,
) -> GdalgStatus {
    guard(|| {
        non_null!(out);
        let name = try_ffi!(read_str(name_or_path, "name_or_path"));
        let inner = engine!(builtins::resolve_presentation(name));
        *out = Box::into_raw(Box::new(GdalgPresentation { inner }));
        GdalgStatus::Ok
    })
}

/// Releases a presentation. Null is ignored.
///
/// # Safety
/// `p` must come from [`gdalg_presentation_load`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gdalg_presentation_free(p: *mut GdalgPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of degree-3 relations after folding degree-2 symmetries.
///
/// # Safety
/// `p` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gdalg_presentation_relation_count(
    p: *const GdalgPresentation,
    out: *mut usize,
) -> GdalgStatus {
    guard(|| {
        non_null!(p, out);
        *out = (*p).inner.relations.len();
        GdalgStatus::Ok
    })
}

/// Dimension of the arity-`n` component of the operad.
///
/// # Safety
/// `p` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gdalg_component_dim(p: *const GdalgPresentation, n: u32, out: *mut usize) -> GdalgStatus {
    guard(|| {
        non_null!(p, out);
        *out = engine!(component_dim(&(*p).inner, n as usize));
        GdalgStatus::Ok
    })
}

/// Decides whether `candidate` lies in the T-ideal generated by the
/// presentation's relations in degree `n`. `candidate` is a polynomial in
/// the presentation's operations or a built-in identity name. Returns `Ok`
/// for a member and `Mismatch` otherwise. If `report` is non-null it
/// receives the JSON report with its certificate.
///
/// # Safety
/// `p` must be valid, `candidate` NUL-terminated, `report` null or valid.
#[no_mangle]
pub unsafe extern "C" fn gdalg_membership(
    p: *const GdalgPresentation,
    candidate: *const c_char,
    n: u32,
    report: *mut *mut c_char,
) -> GdalgStatus {
    guard(|| {
        non_null!(p);
        let text = try_ffi!(read_str(candidate, "candidate"));
        let pres = &(*p).inner;
        let (poly, _) = engine!(builtins::resolve_poly(text, Some(&pres.sig)));
        let r = engine!(tideal_membership(&poly, pres, &[], n as usize));
        if !report.is_null() {
            let s = write_string(report, r.to_json().to_string());
            if s != GdalgStatus::Ok {
                return s;
            }
        }
        if r.member {
            GdalgStatus::Ok
        } else {
            GdalgStatus::Mismatch
        }
    })
}

/// Runs a command-line invocation in process. `argv[0]` is the program
/// name. `report` receives the JSON report; `exit_code` the code the
/// command-line tool would exit with.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; `report` and `exit_code`
/// must be valid.
#[no_mangle]
pub unsafe extern "C" fn gdalg_run(
    argc: c_int,
    argv: *const *const c_char,
    report: *mut *mut c_char,
    exit_code: *mut c_int,
) -> GdalgStatus {
    guard(|| {
        non_null!(report, exit_code);
        if argc < 0 || (argc > 0 && argv.is_null()) {
            return fail(GdalgStatus::NullPointer, "argv is null");
        }
        let mut args = Vec::with_capacity(argc as usize);
        for i in 0..argc as usize {
            args.push(try_ffi!(read_str(*argv.add(i), "argv element")).to_string());
        }
        match gdalg::cli::report(args) {
            Ok((value, code, _)) => {
                *exit_code = code;
                let text = serde_json::to_string_pretty(&value).unwrap_or_default();
                let s = write_string(report, text);
                if s != GdalgStatus::Ok {
                    return s;
                }
                match code {
                    0 => GdalgStatus::Ok,
                    1 if value["status"] == "mismatch" => GdalgStatus::Mismatch,
                    _ => fail(
                        GdalgStatus::InvalidArgument,
                        value["result"]["error"]
                            .as_str()
                            .or(value["error"].as_str())
                            .unwrap_or("command failed"),
                    ),
                }
            }
            Err(e) => {
                *exit_code = if e.use_stderr() { 2 } else { 0 };
                let msg = e.to_string();
                if *exit_code == 0 {
                    write_string(report, msg)
                } else {
                    fail(GdalgStatus::InvalidArgument, msg)
                }
            }
        }
    })
}

/// Runs the built-in self-test. `passed` and `total` count the criteria;
/// `report` (optional) receives the JSON array of checks. Returns
/// `Mismatch` if any check failed.
///
/// # Safety
/// `passed` and `total` must be valid; `report` null or valid.
#[no_mangle]
pub unsafe extern "C" fn gdalg_selftest(
    slow: bool,
    passed: *mut usize,
    total: *mut usize,
    report: *mut *mut c_char,
) -> GdalgStatus {
    guard(|| {
        non_null!(passed, total);
        let checks = gdalg::selftest::run_all(slow);
        *total = checks.len();
        *passed = checks.iter().filter(|c| c.passed).count();
        if !report.is_null() {
            let arr: Vec<_> = checks.iter().map(|c| c.to_json()).collect();
            let s = write_string(report, serde_json::to_string_pretty(&arr).unwrap_or_default());
            if s != GdalgStatus::Ok {
                return s;
            }
        }
        if *passed == *total {
            GdalgStatus::Ok
        } else {
            GdalgStatus::Mismatch
        }
    })
}

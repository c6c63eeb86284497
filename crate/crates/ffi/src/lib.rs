//! C ABI over the invariant engine.
//!
//! Objects are opaque heap handles released with the matching `*_free`.
//! Fallible calls return an [`SkStatus`]; the message for the most recent
//! failure on the calling thread is available from [`sk_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use singknot::braid::{parse_braid, SingularBraidWord};
use singknot::cli::parse_solution;
use singknot::esystem::verify;
use singknot::invariant::{DeltaEvaluator, DeltaParams, InvariantValue};
use singknot::Error;

/// Status codes returned by fallible calls.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    NotESolution = 5,
    SingularPoint = 6,
    Internal = 7,
}

/// A parsed singular braid word.
pub struct SkBraid {
    word: SingularBraidWord,
}

/// Trace parameters bound to a verified E-solution.
pub struct SkParams {
    params: DeltaParams,
}

/// A value of the invariant, `f * lambda^(half/2)`.
pub struct SkValue {
    value: InvariantValue,
    d: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SkStatus {
    match e {
        Error::Parse { .. } | Error::NoInverse { .. } | Error::IndexOutOfRange { .. } => SkStatus::Parse,
        Error::NotESolution | Error::ZeroZeta => SkStatus::NotESolution,
        Error::SingularPoint | Error::ZeroDivisor => SkStatus::SingularPoint,
        _ => SkStatus::InvalidArgument,
    }
}

fn fail(status: SkStatus, msg: impl Into<String>) -> SkStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> SkStatus {
    let s = status_of(&e);
    fail(s, e.to_string())
}

/// Runs `f`, converting panics into [`SkStatus::Internal`].
fn guard(f: impl FnOnce() -> SkStatus) -> SkStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(SkStatus::Internal, "internal panic"))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, SkStatus> {
    if p.is_null() {
        return Err(fail(SkStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(SkStatus::InvalidUtf8, "string is not valid UTF-8"))
}

/// Message describing the last failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a braid word. `strands == 0` infers the strand count.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sk_braid_parse(text: *const c_char, strands: usize, out: *mut *mut SkBraid) -> SkStatus {
    guard(|| {
        if out.is_null() {
            return fail(SkStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_braid(text, (strands > 0).then_some(strands)) {
            Ok(word) => {
                *out = Box::into_raw(Box::new(SkBraid { word }));
                SkStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `b` must come from [`sk_braid_parse`] (or be NULL) and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sk_braid_free(b: *mut SkBraid) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Strand count, or 0 for NULL.
///
/// # Safety
/// `b` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sk_braid_strands(b: *const SkBraid) -> usize {
    b.as_ref().map_or(0, |b| b.word.strands())
}

/// Signed letter count (singular letters count +1), or 0 for NULL.
///
/// # Safety
/// `b` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sk_braid_exponent(b: *const SkBraid) -> i64 {
    b.as_ref().map_or(0, |b| b.word.exponent())
}

/// Binds trace parameters from a solution selector such as `"uniform"`,
/// `"roots-of-unity"`, `"subset:0,2"` or `"custom:-1/2,-1/2"`. The values
/// must satisfy the E-condition.
///
/// # Safety
/// `selector` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sk_params_new(d: u32, selector: *const c_char, out: *mut *mut SkParams) -> SkStatus {
    guard(|| {
        if out.is_null() {
            return fail(SkStatus::NullPointer, "null output pointer");
        }
        if d == 0 {
            return fail(SkStatus::InvalidArgument, "d must be positive");
        }
        let sel = match read_str(selector) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match parse_solution(sel, d).and_then(|s| s.delta_params()) {
            Ok(params) => {
                *out = Box::into_raw(Box::new(SkParams { params }));
                SkStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `p` must come from [`sk_params_new`] (or be NULL) and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sk_params_free(p: *mut SkParams) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Computes the invariant of the closure of `braid`.
///
/// # Safety
/// `params` and `braid` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sk_delta(params: *const SkParams, braid: *const SkBraid, out: *mut *mut SkValue) -> SkStatus {
    guard(|| {
        let (Some(p), Some(b)) = (params.as_ref(), braid.as_ref()) else {
            return fail(SkStatus::NullPointer, "null handle");
        };
        if out.is_null() {
            return fail(SkStatus::NullPointer, "null output pointer");
        }
        match DeltaEvaluator::new(p.params.clone()).delta(&b.word) {
            Ok(value) => {
                *out = Box::into_raw(Box::new(SkValue { value, d: p.params.d() }));
                SkStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// 1 when the value carries a factor `sqrt(lambda)`, else 0.
///
/// # Safety
/// `v` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sk_value_half(v: *const SkValue) -> u8 {
    v.as_ref().map_or(0, |v| v.value.half())
}

/// Text form of the value; release with [`sk_string_free`]. NULL on failure.
///
/// # Safety
/// `v` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sk_value_to_string(v: *const SkValue) -> *mut c_char {
    let Some(v) = v.as_ref() else {
        set_error("null handle".into());
        return ptr::null_mut();
    };
    CString::new(v.value.to_string()).map_or(ptr::null_mut(), CString::into_raw)
}

/// # Safety
/// `s` must come from this library (or be NULL) and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Evaluates the rational-function part `f` (without the `sqrt(lambda)`
/// factor) at the point `(u, z)`.
///
/// # Safety
/// `v` must be a live handle; `out_re` and `out_im` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sk_value_eval(
    v: *const SkValue,
    u_re: f64,
    u_im: f64,
    z_re: f64,
    z_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> SkStatus {
    guard(|| {
        let Some(v) = v.as_ref() else {
            return fail(SkStatus::NullPointer, "null handle");
        };
        if out_re.is_null() || out_im.is_null() {
            return fail(SkStatus::NullPointer, "null output pointer");
        }
        match v.value.f().eval(Complex64::new(u_re, u_im), Complex64::new(z_re, z_im), v.d) {
            Ok(c) => {
                *out_re = c.re;
                *out_im = c.im;
                SkStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `v` must come from [`sk_delta`] (or be NULL) and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sk_value_free(v: *mut SkValue) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Max-norm residual of the E-system at the complex point
/// `x_k = xs_re[k] + i xs_im[k]`, `k = 0..d-2`.
///
/// # Safety
/// `xs_re` and `xs_im` must point to `d - 1` doubles (may be NULL when
/// `d == 1`); `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sk_esystem_residual(d: u32, xs_re: *const f64, xs_im: *const f64, out: *mut f64) -> SkStatus {
    guard(|| {
        if d == 0 {
            return fail(SkStatus::InvalidArgument, "d must be positive");
        }
        if out.is_null() {
            return fail(SkStatus::NullPointer, "null output pointer");
        }
        let k = d as usize - 1;
        if k > 0 && (xs_re.is_null() || xs_im.is_null()) {
            return fail(SkStatus::NullPointer, "null value array");
        }
        let xs: Vec<Complex64> = (0..k).map(|j| Complex64::new(*xs_re.add(j), *xs_im.add(j))).collect();
        match verify(&xs, d) {
            Ok(r) => {
                *out = r.iter().map(|c| c.norm()).fold(0.0, f64::max);
                SkStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

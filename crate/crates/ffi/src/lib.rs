//! C ABI over `padic-strings`.
//!
//! Strings are opaque `PsString` handles created by the `ps_string_*`
//! constructors and released with [`ps_string_free`]. Every fallible call
//! returns a [`PsStatus`]; on failure [`ps_last_error_message`] describes the
//! error on the calling thread. Text results are heap strings owned by the
//! caller and released with [`ps_cstring_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use padic_strings::exactnum::{artin_whaples_product, fmt_rational, parse_rational, rational_to_f64, Prime};
use padic_strings::strings::{
    make_cantor_2, make_cantor_p, make_euler, make_rational_dim, make_smith, FractalStringDesc, KeptSet,
};
use padic_strings::tube::{average_content_closed, average_content_numeric, volume_direct, volume_series, Smoothing};
use padic_strings::zeta::{veneziano_amplitude, zeta_of};
use padic_strings::Error;

/// Opaque fractal string descriptor.
pub struct PsString(FractalStringDesc);

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsStatus {
    Ok = 0,
    Domain = 1,
    Argument = 2,
    Pole = 3,
    JumpPoint = 4,
    Resource = 5,
    Unsupported = 6,
    Parse = 7,
    Io = 8,
    NullPointer = 9,
    Panic = 10,
}

/// A pole `re + i im` with its lattice index.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsComplexDimension {
    pub index: i64,
    pub re: f64,
    pub im: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> PsStatus {
    match e {
        Error::Domain(_) => PsStatus::Domain,
        Error::Argument(_) => PsStatus::Argument,
        Error::Pole { .. } => PsStatus::Pole,
        Error::JumpPoint { .. } => PsStatus::JumpPoint,
        Error::Resource { .. } => PsStatus::Resource,
        Error::Unsupported(_) => PsStatus::Unsupported,
        Error::Json(_) => PsStatus::Parse,
        Error::Io(_) => PsStatus::Io,
    }
}

enum Fail {
    Lib(Error),
    Null(&'static str),
    Utf8(&'static str),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

type FfiResult<T> = std::result::Result<T, Fail>;

fn guard(f: impl FnOnce() -> FfiResult<()>) -> PsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PsStatus::Ok,
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer passed as `{what}`"));
            PsStatus::NullPointer
        }
        Ok(Err(Fail::Utf8(what))) => {
            set_error(format!("`{what}` is not valid UTF-8"));
            PsStatus::Parse
        }
        Err(_) => {
            set_error("internal panic".into());
            PsStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Utf8(what))
}

unsafe fn handle<'a>(s: *const PsString) -> FfiResult<&'a FractalStringDesc> {
    s.as_ref().map(|h| &h.0).ok_or(Fail::Null("string"))
}

unsafe fn write<T>(out: *mut T, v: T, what: &'static str) -> FfiResult<()> {
    if out.is_null() {
        return Err(Fail::Null(what));
    }
    out.write(v);
    Ok(())
}

fn owned_cstring(s: String) -> *mut c_char {
    CString::new(s).expect("library text has no nul bytes").into_raw()
}

unsafe fn emit(out: *mut *mut PsString, build: impl FnOnce() -> FfiResult<FractalStringDesc>) -> PsStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let d = build()?;
        out.write(Box::into_raw(Box::new(PsString(d))));
        Ok(())
    })
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ps_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Build a string from a JSON descriptor `{family, p, m, k, S, diagonal, world}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_string_from_json(json: *const c_char, out: *mut *mut PsString) -> PsStatus {
    emit(out, || Ok(FractalStringDesc::from_json(text(json, "json")?)?))
}

/// `L_p(m, k)` with the default recursion set, or the diagonal one.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_string_rational(p: u64, m: u32, k: u32, diagonal: bool, out: *mut *mut PsString) -> PsStatus {
    let set = if diagonal { KeptSet::Diagonal } else { KeptSet::Default };
    emit(out, || Ok(make_rational_dim(Prime::new(p)?, m, k, set)?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_string_cantor_p(p: u64, out: *mut *mut PsString) -> PsStatus {
    emit(out, || Ok(make_cantor_p(Prime::new(p)?)?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_string_cantor_2(out: *mut *mut PsString) -> PsStatus {
    emit(out, || Ok(make_cantor_2()))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_string_euler(p: u64, out: *mut *mut PsString) -> PsStatus {
    emit(out, || Ok(make_euler(Prime::new(p)?)))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_string_smith(m: u64, out: *mut *mut PsString) -> PsStatus {
    emit(out, || Ok(make_smith(m)?))
}

/// Release a handle. NULL is ignored.
///
/// # Safety
/// `s` must come from a `ps_string_*` constructor and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ps_string_free(s: *mut PsString) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Release text returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ps_cstring_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Short name such as `CS_3` or `L_2(m=2,k=1)`.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_string_name(s: *const PsString, out: *mut *mut c_char) -> PsStatus {
    guard(|| write(out, owned_cstring(handle(s)?.to_string()), "out"))
}

/// Minkowski dimension `D`.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_dimension(s: *const PsString, out: *mut f64) -> PsStatus {
    guard(|| {
        let z = zeta_of(handle(s)?);
        write(out, z.closed_form()?.dimension().value, "out")
    })
}

/// Oscillatory period `2 pi / ln q`.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_period(s: *const PsString, out: *mut f64) -> PsStatus {
    guard(|| {
        let z = zeta_of(handle(s)?);
        write(out, z.closed_form()?.period(), "out")
    })
}

/// The residue shared by every complex dimension.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_residue(s: *const PsString, out: *mut f64) -> PsStatus {
    guard(|| {
        let z = zeta_of(handle(s)?);
        write(out, z.closed_form()?.residue().value, "out")
    })
}

/// Geometric zeta function at `re + i im`.
///
/// # Safety
/// `s` must be a live handle; `out_re` and `out_im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_zeta_eval(s: *const PsString, re: f64, im: f64, out_re: *mut f64, out_im: *mut f64) -> PsStatus {
    guard(|| {
        let v = zeta_of(handle(s)?).eval(Complex64::new(re, im))?;
        write(out_re, v.re, "out_re")?;
        write(out_im, v.im, "out_im")
    })
}

/// Complex dimensions with imaginary part in `[tmin, tmax]`. Writes at most
/// `cap` entries to `buf` (which may be NULL when `cap` is 0) and the total
/// number found to `out_len`.
///
/// # Safety
/// `buf` must hold `cap` entries; `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_complex_dimensions(
    s: *const PsString,
    tmin: f64,
    tmax: f64,
    buf: *mut PsComplexDimension,
    cap: usize,
    out_len: *mut usize,
) -> PsStatus {
    guard(|| {
        let dims = zeta_of(handle(s)?).closed_form()?.complex_dimensions(tmin, tmax);
        if cap > 0 && buf.is_null() {
            return Err(Fail::Null("buf"));
        }
        for (i, d) in dims.iter().take(cap).enumerate() {
            let w = d.value();
            buf.add(i).write(PsComplexDimension { index: d.index, re: w.re, im: w.im });
        }
        write(out_len, dims.len(), "out_len")
    })
}

/// Exact tube volume at the rational scale `eps` (text such as `"1/9"`).
/// `out_exact` may be NULL; otherwise it receives the `num/den` text.
///
/// # Safety
/// `s` must be a live handle; `eps` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ps_volume_direct(
    s: *const PsString,
    eps: *const c_char,
    out: *mut f64,
    out_exact: *mut *mut c_char,
) -> PsStatus {
    guard(|| {
        let eps = parse_rational(text(eps, "eps")?)?;
        let v = volume_direct(handle(s)?, &eps)?;
        write(out, rational_to_f64(&v), "out")?;
        if !out_exact.is_null() {
            out_exact.write(owned_cstring(fmt_rational(&v)));
        }
        Ok(())
    })
}

/// Tube volume from `n` conjugate pairs of complex dimensions, with Fejer
/// weights when `cesaro` is set.
///
/// # Safety
/// `s` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ps_volume_series(s: *const PsString, eps: f64, n: usize, cesaro: bool, out: *mut f64) -> PsStatus {
    guard(|| {
        let smoothing = if cesaro { Smoothing::Cesaro } else { Smoothing::None };
        let v = volume_series(handle(s)?, eps, n, smoothing)?;
        write(out, v.value, "out")
    })
}

/// Closed-form average Minkowski content and its average over `k` whole
/// periods starting at scale `q^-m0`.
///
/// # Safety
/// `s` must be a live handle; outputs writable.
#[no_mangle]
pub unsafe extern "C" fn ps_average_content(
    s: *const PsString,
    m0: u32,
    k: u32,
    out_closed: *mut f64,
    out_numeric: *mut f64,
) -> PsStatus {
    guard(|| {
        let d = handle(s)?;
        write(out_closed, average_content_closed(d)?.value, "out_closed")?;
        write(out_numeric, average_content_numeric(d, m0, k)?.value, "out_numeric")
    })
}

/// Product of all absolute values of the rational `x`, as `num/den` text.
///
/// # Safety
/// `x` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ps_artin_product(x: *const c_char, out: *mut *mut c_char) -> PsStatus {
    guard(|| {
        let v = artin_whaples_product(&parse_rational(text(x, "x")?)?)?;
        write(out, owned_cstring(fmt_rational(&v)), "out")
    })
}

/// Local Veneziano amplitude at the prime `p`.
///
/// # Safety
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ps_veneziano(p: u64, a: f64, b: f64, out: *mut f64) -> PsStatus {
    guard(|| write(out, veneziano_amplitude(Prime::new(p)?, a, b)?, "out"))
}

//! C interface to theta-lab.
//!
//! Every fallible call returns a `ThetaLabStatus`; on failure the message is
//! available from `theta_lab_last_error` until the next call on the same
//! thread. Handles are opaque and must be released with their `*_free`.
//! Strings returned through `char **` are released with `theta_lab_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use theta_lab::congruence::{member, CongruenceGroup, SL2Matrix};
use theta_lab::linalg::CMatrix;
use theta_lab::metaplectic::{mp_mul, MpElement};
use theta_lab::suite::{run_suite, Level};
use theta_lab::symplectic4::{discriminant, Mod4SymplecticElement, Parity};
use theta_lab::thetanum::{theta_constants, verify_transformation, Convention, ConventionRegistry};
use theta_lab::weilrep::weil_rep;
use theta_lab::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaLabStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    InvalidArgument = 3,
    NotMember = 4,
    TauTooLow = 5,
    NoSnap = 6,
    BranchResolution = 7,
    NonUnique = 8,
    ConventionFlip = 9,
    BufferTooSmall = 10,
    Panic = 11,
}

impl From<&Error> for ThetaLabStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) => ThetaLabStatus::Parse,
            Error::NotMember(_) => ThetaLabStatus::NotMember,
            Error::TauTooLow { .. } => ThetaLabStatus::TauTooLow,
            Error::NoSnap { .. } => ThetaLabStatus::NoSnap,
            Error::BranchResolutionFailure(_) => ThetaLabStatus::BranchResolution,
            Error::NonUnique(_) => ThetaLabStatus::NonUnique,
            Error::ConventionFlip { .. } => ThetaLabStatus::ConventionFlip,
            _ => ThetaLabStatus::InvalidArgument,
        }
    }
}

/// A metaplectic element `(γ, ±√(cτ+d))`.
pub struct ThetaLabMp(MpElement);

/// A dense complex matrix.
pub struct ThetaLabMatrix(CMatrix);

/// Holds the direct/conjugate convention fixed by the first decisive check.
pub struct ThetaLabRegistry(ConventionRegistry);

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ThetaLabComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ThetaLabComplex {
    fn from(z: Complex64) -> Self {
        ThetaLabComplex { re: z.re, im: z.im }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ThetaLabTransformReport {
    pub residual: f64,
    pub residual_direct: f64,
    pub residual_conjugate: f64,
    /// 0 direct, 1 conjugate
    pub convention: c_int,
    pub pass: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), ThetaLabStatus>) -> ThetaLabStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ThetaLabStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            ThetaLabStatus::Panic
        }
    }
}

fn fail(e: Error) -> ThetaLabStatus {
    set_error(&e.to_string());
    ThetaLabStatus::from(&e)
}

fn null(what: &str) -> ThetaLabStatus {
    set_error(&format!("{what} is null"));
    ThetaLabStatus::NullPointer
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, ThetaLabStatus> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(&format!("{what} is not UTF-8"));
        ThetaLabStatus::Parse
    })
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), ThetaLabStatus> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn string_out(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the last failed call on this thread; empty after success.
#[no_mangle]
pub extern "C" fn theta_lab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn theta_lab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `"a,b,c,d:+"` or `"a,b,c,d:-"`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn theta_lab_mp_parse(text: *const c_char, out: *mut *mut ThetaLabMp) -> ThetaLabStatus {
    guard(|| {
        let s = read_str(text, "text")?;
        let p: MpElement = s.parse().map_err(fail)?;
        write_out(out, Box::into_raw(Box::new(ThetaLabMp(p))), "out")
    })
}

/// # Safety
/// `p` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn theta_lab_mp_free(p: *mut ThetaLabMp) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn theta_lab_mp_mul(
    a: *const ThetaLabMp,
    b: *const ThetaLabMp,
    out: *mut *mut ThetaLabMp,
) -> ThetaLabStatus {
    guard(|| {
        let (a, b) = (a.as_ref().ok_or_else(|| null("a"))?, b.as_ref().ok_or_else(|| null("b"))?);
        let p = mp_mul(&a.0, &b.0).map_err(fail)?;
        write_out(out, Box::into_raw(Box::new(ThetaLabMp(p))), "out")
    })
}

/// `"(a,b,c,d:±)"`, released with `theta_lab_string_free`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn theta_lab_mp_to_string(p: *const ThetaLabMp, out: *mut *mut c_char) -> ThetaLabStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("p"))?;
        write_out(out, string_out(p.0.to_string()), "out")
    })
}

/// `ρ_m(p)`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn theta_lab_weil_rep(
    m: u32,
    p: *const ThetaLabMp,
    out: *mut *mut ThetaLabMatrix,
) -> ThetaLabStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("p"))?;
        let mat = weil_rep(m, &p.0).map_err(fail)?;
        write_out(out, Box::into_raw(Box::new(ThetaLabMatrix(mat))), "out")
    })
}

/// # Safety
/// `mat` must be a live handle, or null (then 0).
#[no_mangle]
pub unsafe extern "C" fn theta_lab_matrix_rows(mat: *const ThetaLabMatrix) -> usize {
    mat.as_ref().map_or(0, |m| m.0.rows())
}

/// # Safety
/// `mat` must be a live handle, or null (then 0).
#[no_mangle]
pub unsafe extern "C" fn theta_lab_matrix_cols(mat: *const ThetaLabMatrix) -> usize {
    mat.as_ref().map_or(0, |m| m.0.cols())
}

/// # Safety
/// `mat` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn theta_lab_matrix_get(
    mat: *const ThetaLabMatrix,
    row: usize,
    col: usize,
    out: *mut ThetaLabComplex,
) -> ThetaLabStatus {
    guard(|| {
        let m = &mat.as_ref().ok_or_else(|| null("mat"))?.0;
        if row >= m.rows() || col >= m.cols() {
            set_error(&format!("index ({row}, {col}) outside {}x{}", m.rows(), m.cols()));
            return Err(ThetaLabStatus::InvalidArgument);
        }
        write_out(out, m[(row, col)].into(), "out")
    })
}

/// # Safety
/// `mat` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn theta_lab_matrix_free(mat: *mut ThetaLabMatrix) {
    if !mat.is_null() {
        drop(Box::from_raw(mat));
    }
}

/// Writes the `m` theta constants at `tau` into `values[0..m]`.
///
/// # Safety
/// `values` must hold `len` elements; `err_bound` may be null.
#[no_mangle]
pub unsafe extern "C" fn theta_lab_theta_constants(
    m: u32,
    tau: ThetaLabComplex,
    tol: f64,
    values: *mut ThetaLabComplex,
    len: usize,
    err_bound: *mut f64,
) -> ThetaLabStatus {
    guard(|| {
        if values.is_null() {
            return Err(null("values"));
        }
        if len < m as usize {
            set_error(&format!("buffer of {len} for {m} values"));
            return Err(ThetaLabStatus::BufferTooSmall);
        }
        let v = theta_constants(m, Complex64::new(tau.re, tau.im), tol).map_err(fail)?;
        for (i, z) in v.values.iter().enumerate() {
            values.add(i).write((*z).into());
        }
        if !err_bound.is_null() {
            err_bound.write(v.err_bound);
        }
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn theta_lab_registry_new() -> *mut ThetaLabRegistry {
    Box::into_raw(Box::new(ThetaLabRegistry(ConventionRegistry::new())))
}

/// # Safety
/// `r` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn theta_lab_registry_free(r: *mut ThetaLabRegistry) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// `θ(γτ)` against `φ(τ)ρ_m(p)θ(τ)`; the registry carries the run's convention.
///
/// # Safety
/// `p`, `registry` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn theta_lab_verify_transformation(
    m: u32,
    p: *const ThetaLabMp,
    tau: ThetaLabComplex,
    tol: f64,
    registry: *const ThetaLabRegistry,
    out: *mut ThetaLabTransformReport,
) -> ThetaLabStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("p"))?;
        let reg = registry.as_ref().ok_or_else(|| null("registry"))?;
        let r = verify_transformation(m, &p.0, Complex64::new(tau.re, tau.im), tol, &reg.0).map_err(fail)?;
        let report = ThetaLabTransformReport {
            residual: r.residual,
            residual_direct: r.residual_direct,
            residual_conjugate: r.residual_conjugate,
            convention: match r.convention {
                Convention::Direct => 0,
                Convention::Conjugate => 1,
            },
            pass: r.pass,
        };
        write_out(out, report, "out")
    })
}

/// `λ(γ) = e^{2πi num/den}` for `γ ∈ Sp(2g, ℤ/4)` given by `4g²` entries;
/// `parity` is 0 for even, 1 for odd.
///
/// # Safety
/// `entries` must hold `len` values; `num`, `den` must be writable.
#[no_mangle]
pub unsafe extern "C" fn theta_lab_discriminant(
    parity: c_int,
    entries: *const i64,
    len: usize,
    num: *mut u64,
    den: *mut u64,
) -> ThetaLabStatus {
    guard(|| {
        if entries.is_null() {
            return Err(null("entries"));
        }
        let parity = match parity {
            0 => Parity::Even,
            1 => Parity::Odd,
            _ => {
                set_error("parity must be 0 or 1");
                return Err(ThetaLabStatus::InvalidArgument);
            }
        };
        let e = std::slice::from_raw_parts(entries, len);
        let g = Mod4SymplecticElement::from_entries(e, parity).map_err(fail)?;
        let l = discriminant(&g).map_err(fail)?;
        write_out(num, l.num(), "num")?;
        write_out(den, l.den(), "den")
    })
}

/// Membership of `(a,b;c,d)` in the named group (`gamma`, `gamma0`,
/// `gamma-m-2m`, `theta12`); `param` is ignored for `theta12`.
///
/// # Safety
/// `group` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn theta_lab_congruence_member(
    group: *const c_char,
    param: u64,
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    out: *mut bool,
) -> ThetaLabStatus {
    guard(|| {
        let name = read_str(group, "group")?;
        let g = CongruenceGroup::parse(name, Some(param)).map_err(fail)?;
        let gamma = SL2Matrix::new(a, b, c, d).map_err(fail)?;
        write_out(out, member(&gamma, g), "out")
    })
}

/// Runs the verification battery (`level` 0 quick, 1 full) and returns the
/// JSON report through `json`.
///
/// # Safety
/// `json` and `all_pass` must be writable.
#[no_mangle]
pub unsafe extern "C" fn theta_lab_run_suite(
    level: c_int,
    seed: u64,
    json: *mut *mut c_char,
    all_pass: *mut bool,
) -> ThetaLabStatus {
    guard(|| {
        let level = match level {
            0 => Level::Quick,
            1 => Level::Full,
            _ => {
                set_error("level must be 0 or 1");
                return Err(ThetaLabStatus::InvalidArgument);
            }
        };
        if json.is_null() || all_pass.is_null() {
            return Err(null("output"));
        }
        let report = run_suite(level, seed);
        let text = serde_json::to_string(&report).map_err(|e| {
            set_error(&e.to_string());
            ThetaLabStatus::Panic
        })?;
        all_pass.write(report.all_pass());
        json.write(string_out(text));
        Ok(())
    })
}

//! C ABI over the valtube engine.
//!
//! Matrices are opaque `VtMatrix` handles. Every fallible call returns a
//! `VtStatus`; on failure `vt_last_error_message` describes the error for the
//! calling thread. Strings handed out must be released with `vt_string_free`,
//! matrices with `vt_matrix_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_rational::BigRational;
use valtube::algebra::{Basis, Family, OperatorMatrix};
use valtube::emit::{matrix_doc, Format, OpName};
use valtube::scalar::numeric::NumCtx;
use valtube::scalar::TrigPoly;
use valtube::spaceform::{derivative, tube};
use valtube::{verify, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    IndexOutOfRange = 3,
    Unsupported = 4,
    DivisionByZero = 5,
    VerificationFailed = 6,
    Internal = 7,
}

enum Payload {
    Tube(OperatorMatrix<TrigPoly>),
    Derivative(OperatorMatrix),
}

/// An operator matrix over a fixed basis.
pub struct VtMatrix {
    payload: Payload,
    /// The λ = 0 tube, for evaluating entries whose coefficients have 1/λ.
    flat: Option<OperatorMatrix<TrigPoly>>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> VtStatus {
    match e {
        Error::IndexOutOfRange(_) => VtStatus::IndexOutOfRange,
        Error::UnsupportedBasis(_) | Error::BasisMismatch { .. } => VtStatus::Unsupported,
        Error::DivisionByZero => VtStatus::DivisionByZero,
        _ => VtStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (VtStatus, String)>) -> VtStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => VtStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            VtStatus::Internal
        }
    }
}

fn lift<T>(r: valtube::Result<T>) -> Result<T, (VtStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (VtStatus, String) {
    (VtStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (VtStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (VtStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn hand_out(out: *mut *mut VtMatrix, m: VtMatrix) -> Result<(), (VtStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(m));
    Ok(())
}

unsafe fn hand_out_string(out: *mut *mut c_char, s: String) -> Result<(), (VtStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s).expect("documents have no nul").into_raw();
    Ok(())
}

fn family(name: &str) -> Result<Family, (VtStatus, String)> {
    lift(name.parse())
}

fn make_tube(b: Basis) -> valtube::Result<VtMatrix> {
    let m = tube::tube(b)?;
    Ok(VtMatrix { payload: Payload::Tube(m), flat: Some(tube::tube_at_zero_curvature(b)?) })
}

fn make_derivative(b: Basis) -> valtube::Result<VtMatrix> {
    Ok(VtMatrix { payload: Payload::Derivative(derivative::derivative(b)?), flat: None })
}

fn ambient(n: u32) -> Result<u32, (VtStatus, String)> {
    if n == 0 {
        Err((VtStatus::InvalidArgument, "dimension must be at least 1".into()))
    } else {
        Ok(n)
    }
}

/// Tube operator of a curved space in the basis named `family_name`
/// (e.g. `"C-SigmaLam"`, `"R-Tau"`).
///
/// # Safety
/// `family_name` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vt_tube(family_name: *const c_char, ambient_dim: u32, out: *mut *mut VtMatrix) -> VtStatus {
    guard(|| {
        let f = family(str_arg(family_name, "family")?)?;
        let m = lift(make_tube(Basis::new(f, ambient(ambient_dim)?)))?;
        hand_out(out, m)
    })
}

/// Derivative operator of a curved space in the basis named `family_name`.
///
/// # Safety
/// As for `vt_tube`.
#[no_mangle]
pub unsafe extern "C" fn vt_derivative(
    family_name: *const c_char,
    ambient_dim: u32,
    out: *mut *mut VtMatrix,
) -> VtStatus {
    guard(|| {
        let f = family(str_arg(family_name, "family")?)?;
        let m = lift(make_derivative(Basis::new(f, ambient(ambient_dim)?)))?;
        hand_out(out, m)
    })
}

/// Tube of the complex space form of complex dimension `n`, σ^λ basis.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vt_tube_complex(n: u32, out: *mut *mut VtMatrix) -> VtStatus {
    guard(|| hand_out(out, lift(make_tube(Basis::new(Family::CSigmaLam, ambient(n)?)))?))
}

/// Tube of the real space form of dimension `d`, σ^λ basis.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vt_tube_real(d: u32, out: *mut *mut VtMatrix) -> VtStatus {
    guard(|| hand_out(out, lift(make_tube(Basis::new(Family::RSigma, ambient(d)?)))?))
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vt_derivative_complex(n: u32, out: *mut *mut VtMatrix) -> VtStatus {
    guard(|| hand_out(out, lift(make_derivative(Basis::new(Family::CSigmaLam, ambient(n)?)))?))
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vt_derivative_real(d: u32, out: *mut *mut VtMatrix) -> VtStatus {
    guard(|| hand_out(out, lift(make_derivative(Basis::new(Family::RSigma, ambient(d)?)))?))
}

unsafe fn matrix_arg<'a>(m: *const VtMatrix) -> Result<&'a VtMatrix, (VtStatus, String)> {
    m.as_ref().ok_or_else(|| null("matrix"))
}

impl VtMatrix {
    fn dims(&self) -> (usize, usize) {
        let (d, c) = match &self.payload {
            Payload::Tube(m) => (m.domain(), m.codomain()),
            Payload::Derivative(m) => (m.domain(), m.codomain()),
        };
        (c.dim(), d.dim())
    }

    fn doc(&self, f: Format) -> String {
        match &self.payload {
            Payload::Tube(m) => matrix_doc(f, OpName::Tube, m),
            Payload::Derivative(m) => matrix_doc(f, OpName::Derivative, m),
        }
    }
}

/// Number of rows (codomain dimension) and columns (domain dimension).
/// Rows and columns follow the basis label order of the JSON document.
///
/// # Safety
/// `m` must come from this library; `rows` and `cols` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn vt_matrix_dim(m: *const VtMatrix, rows: *mut usize, cols: *mut usize) -> VtStatus {
    guard(|| {
        let m = matrix_arg(m)?;
        if rows.is_null() || cols.is_null() {
            return Err(null("rows/cols"));
        }
        let (r, c) = m.dims();
        *rows = r;
        *cols = c;
        Ok(())
    })
}

/// Canonical JSON of the matrix; release with `vt_string_free`.
///
/// # Safety
/// `m` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vt_matrix_to_json(m: *const VtMatrix, out: *mut *mut c_char) -> VtStatus {
    guard(|| hand_out_string(out, matrix_arg(m)?.doc(Format::Json)))
}

/// The matrix as a LaTeX `align*` block; release with `vt_string_free`.
///
/// # Safety
/// As for `vt_matrix_to_json`.
#[no_mangle]
pub unsafe extern "C" fn vt_matrix_to_latex(m: *const VtMatrix, out: *mut *mut c_char) -> VtStatus {
    guard(|| hand_out_string(out, matrix_arg(m)?.doc(Format::Latex)))
}

/// Entry (`row`, `col`) at λ = `lambda_num/lambda_den` and decimal `t`,
/// printed with `digits` significant digits. Derivative entries ignore `t`.
///
/// # Safety
/// `m` must come from this library, `t` a nul-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn vt_matrix_eval_entry(
    m: *const VtMatrix,
    row: usize,
    col: usize,
    lambda_num: i64,
    lambda_den: i64,
    t: *const c_char,
    digits: u32,
    out: *mut *mut c_char,
) -> VtStatus {
    guard(|| {
        let m = matrix_arg(m)?;
        let t = str_arg(t, "t")?;
        if lambda_den == 0 || digits == 0 {
            return Err((VtStatus::InvalidArgument, "lambda_den and digits must be nonzero".into()));
        }
        let lam = BigRational::new(lambda_num.into(), lambda_den.into());
        let (rows, cols) = m.dims();
        if row >= rows || col >= cols {
            return Err((VtStatus::IndexOutOfRange, format!("entry ({row}, {col}) outside {rows}x{cols}")));
        }
        let tube_entry = |mat: &OperatorMatrix<TrigPoly>| {
            let (r, c) = (mat.codomain().labels()[row], mat.domain().labels()[col]);
            mat.get(&r, &c)
        };
        let p = match (&m.payload, &m.flat) {
            (Payload::Tube(_), Some(flat)) if num_traits::Zero::is_zero(&lam) => tube_entry(flat),
            (Payload::Tube(mat), _) => tube_entry(mat),
            (Payload::Derivative(mat), _) => {
                let (r, c) = (mat.codomain().labels()[row], mat.domain().labels()[col]);
                TrigPoly::constant(mat.get(&r, &c))
            }
        };
        let digits = digits as usize;
        let mut ctx = NumCtx::with_digits(digits);
        let tt = lift(ctx.parse_decimal(t))?;
        let pt = ctx.trig_point(&lam, &tt);
        let v = lift(ctx.trig(&p, &pt))?;
        let s = ctx.format(&v, digits);
        hand_out_string(out, s)
    })
}

/// Runs the invariant suite; `failures` (if non-null) receives the number of
/// failing checks. Returns `VerificationFailed` when any check fails.
///
/// # Safety
/// `failures` must be null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vt_verify_all(failures: *mut u32) -> VtStatus {
    guard(|| {
        let bad: Vec<String> = verify::run(None)
            .into_iter()
            .filter_map(|(n, _, r)| r.err().map(|e| format!("{n}: {e}")))
            .collect();
        if !failures.is_null() {
            *failures = bad.len() as u32;
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err((VtStatus::VerificationFailed, bad.join("; ")))
        }
    })
}

/// Message for the last failed call on this thread, or null. The pointer stays
/// valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn vt_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn vt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `m` must be null or a handle returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn vt_matrix_free(m: *mut VtMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

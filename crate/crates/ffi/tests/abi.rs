use std::ffi::{CStr, CString};
use std::ptr;

use valtube_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { vt_string_free(s) };
    out
}

#[test]
fn real_tube_roundtrip() {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { vt_tube_real(2, &mut m) }, VtStatus::Ok);
    let (mut r, mut c) = (0, 0);
    assert_eq!(unsafe { vt_matrix_dim(m, &mut r, &mut c) }, VtStatus::Ok);
    assert_eq!((r, c), (3, 3));

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { vt_matrix_to_json(m, &mut s) }, VtStatus::Ok);
    let json = take(s);
    assert!(json.contains("\"R-Sigma\""));

    assert_eq!(unsafe { vt_matrix_to_latex(m, &mut s) }, VtStatus::Ok);
    assert!(take(s).starts_with("\\begin{align*}"));

    // σ_0 coefficient of T_t σ_2 on the unit sphere: 1 − cos t
    let t = CString::new("0.5").unwrap();
    assert_eq!(unsafe { vt_matrix_eval_entry(m, 0, 2, 1, 1, t.as_ptr(), 20, &mut s) }, VtStatus::Ok);
    let v: f64 = take(s).parse().unwrap();
    assert!((v - (1.0 - 0.5f64.cos())).abs() < 1e-15);

    // flat limit: t²/2
    assert_eq!(unsafe { vt_matrix_eval_entry(m, 0, 2, 0, 1, t.as_ptr(), 20, &mut s) }, VtStatus::Ok);
    let v: f64 = take(s).parse().unwrap();
    assert!((v - 0.125).abs() < 1e-15);
    unsafe { vt_matrix_free(m) };
}

#[test]
fn derivative_entries() {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { vt_derivative_real(3, &mut m) }, VtStatus::Ok);
    let t = CString::new("0").unwrap();
    let mut s = ptr::null_mut();
    // ∂σ_2 = σ_1
    assert_eq!(unsafe { vt_matrix_eval_entry(m, 1, 2, 1, 2, t.as_ptr(), 10, &mut s) }, VtStatus::Ok);
    assert_eq!(take(s).parse::<f64>().unwrap(), 1.0);
    unsafe { vt_matrix_free(m) };

    assert_eq!(unsafe { vt_derivative_complex(2, &mut m) }, VtStatus::Ok);
    unsafe { vt_matrix_free(m) };
}

#[test]
fn named_families() {
    let mut m = ptr::null_mut();
    let f = CString::new("C-TauLam").unwrap();
    assert_eq!(unsafe { vt_tube(f.as_ptr(), 2, &mut m) }, VtStatus::Ok);
    unsafe { vt_matrix_free(m) };
    let f = CString::new("R-Hyper").unwrap();
    assert_eq!(unsafe { vt_derivative(f.as_ptr(), 4, &mut m) }, VtStatus::Ok);
    unsafe { vt_matrix_free(m) };
}

#[test]
fn errors_are_reported() {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { vt_tube_complex(0, &mut m) }, VtStatus::InvalidArgument);
    assert!(!vt_last_error_message().is_null());

    let f = CString::new("U-Mu").unwrap();
    assert_eq!(unsafe { vt_tube(f.as_ptr(), 2, &mut m) }, VtStatus::Unsupported);
    let f = CString::new("nonsense").unwrap();
    assert_eq!(unsafe { vt_tube(f.as_ptr(), 2, &mut m) }, VtStatus::InvalidArgument);
    assert_eq!(unsafe { vt_tube(ptr::null(), 2, &mut m) }, VtStatus::NullPointer);

    assert_eq!(unsafe { vt_tube_real(2, &mut m) }, VtStatus::Ok);
    assert!(vt_last_error_message().is_null());
    let t = CString::new("0.5").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { vt_matrix_eval_entry(m, 3, 0, 1, 1, t.as_ptr(), 10, &mut s) },
        VtStatus::IndexOutOfRange
    );
    let bad = CString::new("abc").unwrap();
    assert_eq!(
        unsafe { vt_matrix_eval_entry(m, 0, 0, 1, 1, bad.as_ptr(), 10, &mut s) },
        VtStatus::InvalidArgument
    );
    unsafe { vt_matrix_free(m) };
    unsafe { vt_matrix_free(ptr::null_mut()) };
    unsafe { vt_string_free(ptr::null_mut()) };
}

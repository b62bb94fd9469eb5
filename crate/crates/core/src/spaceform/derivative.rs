//! The derivative operator ∂ on the curved spaces.

use crate::algebra::{Basis, Family, Label, OperatorMatrix, ValExpr};
use crate::error::{Error, Result};
use crate::flat;
use crate::scalar::{omega, Scalar};

use super::bases;

fn s(v: i64) -> Scalar {
    Scalar::from_int(v)
}

/// ∂ on C-MuLam(n) from the explicit row formula.
pub fn complex_direct(n: u32) -> OperatorMatrix {
    let b = Basis::new(Family::CMuLam, n);
    let half = Scalar::lambda() / (Scalar::from_int(2) * Scalar::pi());
    OperatorMatrix::from_columns(b, b, |l| {
        let Label::Pair(k, q) = l else { unreachable!() };
        let (ki, qi, ni) = (k as i64, q as i64, n as i64);
        let w = omega(2 * n - k + 1) / omega(2 * n - k);
        let mut e = ValExpr::zero(b);
        let mut put = |kk: i64, qq: i64, c: Scalar| {
            if kk >= 0 && qq >= 0 {
                e.add_coerced(Label::Pair(kk as u32, qq as u32), c.clone() * w.clone());
            }
        };
        let top = s(2 * ni - ki + 1) * half.clone();
        if k == 2 * q {
            put(ki - 1, qi - 1, Scalar::one());
            put(ki + 1, qi, -(top.clone()));
        } else {
            let a = s(ki - 2 * qi + 1);
            put(ki - 1, qi - 1, a.clone());
            put(ki - 1, qi, s(2 * (ni - ki + qi + 1)));
            put(ki + 1, qi, -(top.clone() * a));
            put(ki + 1, qi + 1, -(top * s(2 * (qi + 1))));
        }
        Ok(e)
    })
    .expect("labels stay in C-MuLam")
}

/// ∂ = Φ_λ ∘ (Λ − λL) ∘ Φ_λ^{-1} on C-MuLam(n).
pub fn complex_intertwined(n: u32) -> Result<OperatorMatrix> {
    let fb = Basis::new(Family::UMu, n);
    let inner = flat::lambda_matrix(fb)?.sub(&flat::l_matrix(fb)?.scale(&Scalar::lambda()))?;
    bases::phi_matrix(n).compose(&inner.compose(&bases::phi_inv_matrix(n))?)
}

/// ∂ on the complex space form in any curved complex family.
pub fn derivative_complex(n: u32, family: Family) -> Result<OperatorMatrix> {
    let d = complex_direct(n);
    if family == Family::CMuLam {
        return Ok(d);
    }
    bases::conjugate(&d, family, |x| x.clone())
}

/// ∂ on R-Sigma(d).
pub fn derivative_real_sigma(d: u32) -> OperatorMatrix {
    let b = Basis::new(Family::RSigma, d);
    OperatorMatrix::from_columns(b, b, |l| {
        let i = l.degree();
        let mut e = ValExpr::zero(b);
        if i + 2 <= d {
            if i > 0 {
                e.add_coerced(Label::Single(i - 1), s((d - i) as i64));
            }
            e.add_coerced(Label::Single(i + 1), -(Scalar::lambda() * s(i as i64 + 1)));
        } else if i >= 1 {
            e.add_coerced(Label::Single(i - 1), Scalar::one());
        }
        Ok(e)
    })
    .expect("labels stay in R-Sigma")
}

/// ∂ on the real space form in R-Sigma or R-Tau.
pub fn derivative_real(d: u32, family: Family) -> Result<OperatorMatrix> {
    let m = derivative_real_sigma(d);
    match family {
        Family::RSigma => Ok(m),
        Family::RTau => bases::conjugate(&m, family, |x| x.clone()),
        _ => Err(Error::UnsupportedBasis(format!(
            "the real derivative lives on R-Sigma or R-Tau, not {family}"
        ))),
    }
}

/// ∂ on any curved basis.
pub fn derivative(b: Basis) -> Result<OperatorMatrix> {
    match b.family {
        Family::RSigma | Family::RTau => derivative_real(b.ambient, b.family),
        Family::RHyper => rebase_hyper(&derivative_real_sigma(b.ambient)),
        f if f.flat_twin().is_some() => derivative_complex(b.ambient, f),
        _ => Err(Error::UnsupportedBasis(format!(
            "{b} is a flat basis; use the flat derivative"
        ))),
    }
}

/// Restriction of an R-Sigma operator to the hyperplane σ_0..σ_{d−1}.
pub fn rebase_hyper<K: crate::scalar::Ring>(m: &OperatorMatrix<K>) -> Result<OperatorMatrix<K>> {
    let d = m.domain().ambient;
    let hb = Basis::new(Family::RHyper, d);
    let mut out = OperatorMatrix::zero(hb, hb);
    for (r, c, v) in m.entries() {
        if hb.contains(&c) {
            out.add_entry(r, c, v.clone())?;
        }
    }
    Ok(out)
}

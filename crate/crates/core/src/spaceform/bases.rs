//! Changes of basis on the curved spaces and the maps Φ_λ, Ψ_λ, J.

use crate::algebra::{Basis, Family, Label, OperatorMatrix, ValExpr};
use crate::error::{Error, Result};
use crate::flat;
use crate::scalar::{binomial_s, factorial_s, omega, Ring, Scalar};
use crate::sl2::HomogPoly;

fn unsupported(b: Basis, what: &str) -> Error {
    Error::UnsupportedBasis(format!("{what} is not available on {b}"))
}

/// Coordinate change between two complex curved families.
///
/// The relabeling ν ↦ ν^λ is linear, so the coefficients are the flat ones.
pub fn complex_change(n: u32, from: Family, to: Family) -> Result<OperatorMatrix> {
    let (ff, ft) = match (from.flat_twin(), to.flat_twin()) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(unsupported(
                Basis::new(from, n),
                "a complex curved change of basis",
            ))
        }
    };
    flat::unitary_change(n, ff, ft)?.rebase(Basis::new(from, n), Basis::new(to, n))
}

/// σ^λ_i = f_i τ^λ_i with f_i = π̂^i (d−i) ω_{d−i} / (i! ω_i), f_d = π̂^d / (d! ω_d).
pub fn real_sigma_tau_factor(d: u32, i: u32) -> Scalar {
    let pi_i = Scalar::pi().powi(i as i32);
    if i < d {
        pi_i * Scalar::from_int((d - i) as i64) * omega(d - i) / (factorial_s(i) * omega(i))
    } else {
        pi_i / (factorial_s(d) * omega(d))
    }
}

/// Coordinate change between R-Sigma and R-Tau.
pub fn real_change(d: u32, from: Family, to: Family) -> Result<OperatorMatrix> {
    let (fb, tb) = (Basis::new(from, d), Basis::new(to, d));
    let factor = |i: u32| -> Result<Scalar> {
        match (from, to) {
            (Family::RSigma, Family::RSigma) | (Family::RTau, Family::RTau) => Ok(Scalar::one()),
            (Family::RSigma, Family::RTau) => Ok(real_sigma_tau_factor(d, i)),
            (Family::RTau, Family::RSigma) => Ok(real_sigma_tau_factor(d, i)
                .inv()
                .expect("nonzero factor")),
            _ => Err(unsupported(fb, "a real curved change of basis")),
        }
    };
    OperatorMatrix::from_columns(fb, tb, |l| {
        ValExpr::from_terms(tb, [(l, factor(l.degree())?)])
    })
}

/// Coordinate change between any two curved families of one space.
pub fn curved_change(ambient: u32, from: Family, to: Family) -> Result<OperatorMatrix> {
    if from.flat_twin().is_some() {
        complex_change(ambient, from, to)
    } else {
        real_change(ambient, from, to)
    }
}

pub fn convert(v: &ValExpr, to: Family) -> Result<ValExpr> {
    let b = v.basis();
    curved_change(b.ambient, b.family, to)?.apply(v)
}

/// Conjugates an operator from its own basis family to `to`.
pub fn conjugate<K: Ring>(m: &OperatorMatrix<K>, to: Family, lift: impl Fn(&Scalar) -> K) -> Result<OperatorMatrix<K>> {
    let b = m.domain();
    let into = curved_change(b.ambient, b.family, to)?.map(&lift);
    let back = curved_change(b.ambient, to, b.family)?.map(&lift);
    into.compose(&m.compose(&back)?)
}

/// Φ_λ: μ_{k,q} ↦ ω_{2n−k} μ^λ_{k,q}.
pub fn phi_matrix(n: u32) -> OperatorMatrix {
    let (fb, cb) = (Basis::new(Family::UMu, n), Basis::new(Family::CMuLam, n));
    OperatorMatrix::from_columns(fb, cb, |l| {
        ValExpr::from_terms(cb, [(l, omega(2 * n - l.degree()))])
    })
    .expect("diagonal")
}

pub fn phi_inv_matrix(n: u32) -> OperatorMatrix {
    let (fb, cb) = (Basis::new(Family::UMu, n), Basis::new(Family::CMuLam, n));
    OperatorMatrix::from_columns(cb, fb, |l| {
        let w = omega(2 * n - l.degree()).inv().expect("nonzero");
        ValExpr::from_terms(fb, [(l, w)])
    })
    .expect("diagonal")
}

pub fn phi_map(v: &ValExpr) -> Result<ValExpr> {
    if v.basis().family != Family::UMu {
        return Err(unsupported(v.basis(), "Φ_λ"));
    }
    phi_matrix(v.basis().ambient).apply(v)
}

pub fn phi_inv(v: &ValExpr) -> Result<ValExpr> {
    if v.basis().family != Family::CMuLam {
        return Err(unsupported(v.basis(), "Φ_λ^{-1}"));
    }
    phi_inv_matrix(v.basis().ambient).apply(v)
}

/// Ψ_λ: μ_k ↦ σ^λ_k from Val^{O(m)} into the real space form of dimension m + 1.
pub fn psi_matrix(m: u32) -> OperatorMatrix {
    let (fb, rb) = (Basis::new(Family::OMu, m), Basis::new(Family::RSigma, m + 1));
    OperatorMatrix::from_columns(fb, rb, |l| ValExpr::basis_element(rb, l)).expect("μ_k ↦ σ_k")
}

pub fn psi_map(v: &ValExpr) -> Result<ValExpr> {
    if v.basis().family != Family::OMu {
        return Err(unsupported(v.basis(), "Ψ_λ"));
    }
    psi_matrix(v.basis().ambient).apply(v)
}

/// J_{λ,ℂ} on the component V^{(2n−4r)}: C(m,j) x^j y^{m−j} ↦ σ^λ_{j+2r,r}.
pub fn j_complex<K: Ring>(n: u32, r: u32, p: &HomogPoly<K>) -> Result<ValExpr<K>> {
    if 2 * r > n || p.degree() != 2 * n - 4 * r {
        return Err(Error::IndexOutOfRange(format!(
            "J needs degree 2n - 4r = {} for n = {n}, r = {r}; got {}",
            (2 * n).saturating_sub(4 * r),
            p.degree()
        )));
    }
    let m = p.degree();
    let mut out = ValExpr::zero(Basis::new(Family::CSigmaLam, n));
    for (j, c) in p.coeffs() {
        let w = binomial_s(m as i64, *j as i64).inv().expect("nonzero binomial");
        out.add_term(Label::Pair(j + 2 * r, r), c.scale(&w))?;
    }
    Ok(out)
}

/// Inverse of J_{λ,ℂ} on the r-component of a σ-expression.
pub fn j_complex_inv<K: Ring>(v: &ValExpr<K>, r: u32) -> Result<HomogPoly<K>> {
    let n = v.basis().ambient;
    if v.basis().family != Family::CSigmaLam {
        return Err(unsupported(v.basis(), "J^{-1}"));
    }
    let m = 2 * n - 4 * r;
    let mut p = HomogPoly::zero(m);
    for (l, c) in v.terms() {
        if l.second() == Some(r) {
            let j = l.degree() - 2 * r;
            p.add_term(j, c.scale(&binomial_s(m as i64, j as i64)))?;
        }
    }
    Ok(p)
}

/// J_{λ,ℝ}: C(m,i) x^i y^{m−i} ↦ σ^λ_i with m = d − 1.
pub fn j_real<K: Ring>(d: u32, p: &HomogPoly<K>) -> Result<ValExpr<K>> {
    if d == 0 || p.degree() != d - 1 {
        return Err(Error::IndexOutOfRange(format!(
            "J needs degree d - 1 for d = {d}; got {}",
            p.degree()
        )));
    }
    let m = p.degree();
    let mut out = ValExpr::zero(Basis::new(Family::RSigma, d));
    for (i, c) in p.coeffs() {
        let w = binomial_s(m as i64, *i as i64).inv().expect("nonzero binomial");
        out.add_term(Label::Single(*i), c.scale(&w))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_examples() {
        let b = Basis::new(Family::UMu, 2);
        let cb = Basis::new(Family::CMuLam, 2);
        let v = ValExpr::basis_element(b, Label::Pair(2, 1)).unwrap();
        let got = phi_map(&v).unwrap();
        assert_eq!(got, ValExpr::from_terms(cb, [(Label::Pair(2, 1), Scalar::pi())]).unwrap());
        assert_eq!(phi_inv(&got).unwrap(), v);
        let z = ValExpr::basis_element(b, Label::Pair(0, 0)).unwrap();
        assert_eq!(phi_map(&z).unwrap().coeff(&Label::Pair(0, 0)), omega(4));
    }

    #[test]
    fn psi_shifts_dimension() {
        let b = Basis::new(Family::OMu, 3);
        let v = ValExpr::basis_element(b, Label::Single(3)).unwrap();
        let w = psi_map(&v).unwrap();
        assert_eq!(w.basis(), Basis::new(Family::RSigma, 4));
        assert_eq!(w.coeff(&Label::Single(3)), Scalar::one());
    }

    #[test]
    fn sigma_roundtrip() {
        for n in 1..5 {
            let a = complex_change(n, Family::CSigmaLam, Family::CMuLam).unwrap();
            let b = complex_change(n, Family::CMuLam, Family::CSigmaLam).unwrap();
            let id = OperatorMatrix::identity(Basis::new(Family::CSigmaLam, n));
            assert_eq!(b.compose(&a).unwrap(), id);
        }
    }

    #[test]
    fn volume_is_top_sigma() {
        for n in 1..5 {
            let c = complex_change(n, Family::CSigmaLam, Family::CTauLam).unwrap();
            let top = c.column(&Label::Pair(2 * n, 0));
            let expect = ValExpr::basis_element(Basis::new(Family::CTauLam, n), Label::Pair(2 * n, n))
                .unwrap();
            assert_eq!(top, expect, "n = {n}");
        }
    }

    #[test]
    fn real_factors() {
        let d = 3;
        assert_eq!(
            real_sigma_tau_factor(d, 0),
            Scalar::from_int(3) * omega(3)
        );
        assert_eq!(
            real_sigma_tau_factor(d, 3),
            Scalar::pi().powi(3) / (factorial_s(3) * omega(3))
        );
    }
}

//! Kernel and image of ∂: stable valuations, Euler characteristic, preimages.

use crate::algebra::{Basis, Family, Label, ValExpr};
use crate::error::{Error, Result};
use crate::scalar::{binomial_s, factorial_s, omega, Scalar};
use crate::sl2::p_poly;

use super::bases;

fn sigma_basis(n: u32) -> Basis {
    Basis::new(Family::CSigmaLam, n)
}

/// ψ_{2r} = Σ_{i=r}^{n−r} C(n−2r, i−r)/C(2n−4r, 2i−2r) λ^{i−r} σ_{2i,r}.
pub fn stable_valuation(n: u32, r: u32) -> Result<ValExpr> {
    if 2 * r > n {
        return Err(Error::IndexOutOfRange(format!("need 2r <= n, got n = {n}, r = {r}")));
    }
    let mut e = ValExpr::zero(sigma_basis(n));
    for i in r..=(n - r) {
        let c = binomial_s((n - 2 * r) as i64, (i - r) as i64)
            / binomial_s((2 * n - 4 * r) as i64, (2 * i - 2 * r) as i64)
            * Scalar::lambda().powi((i - r) as i32);
        e.add_term(Label::Pair(2 * i, r), c)?;
    }
    Ok(e)
}

/// The basis ψ_0, ψ_2, …, ψ_{2⌊n/2⌋} of ker ∂.
pub fn stable_basis(n: u32) -> Vec<ValExpr> {
    (0..=n / 2)
        .map(|r| stable_valuation(n, r).expect("2r <= n"))
        .collect()
}

/// a_r = (λ/4π̂)^r C(2r,r) r! / ω_{2n−2r}.
pub fn euler_coefficient(n: u32, r: u32) -> Scalar {
    let base = Scalar::lambda() / (Scalar::from_int(4) * Scalar::pi());
    base.powi(r as i32) * binomial_s(2 * r as i64, r as i64) * factorial_s(r) / omega(2 * n - 2 * r)
}

/// χ = Σ_r a_r ψ_{2r} on C-SigmaLam(n).
pub fn euler_complex(n: u32) -> ValExpr {
    let mut chi = ValExpr::zero(sigma_basis(n));
    for (r, psi) in stable_basis(n).iter().enumerate() {
        chi.axpy(&euler_coefficient(n, r as u32), psi)
            .expect("same basis");
    }
    chi
}

/// Coefficients of `v` in the stable basis, when `v` lies in ker ∂.
pub fn stable_coordinates(v: &ValExpr) -> Result<Vec<Scalar>> {
    let n = need_sigma(v)?;
    let basis = stable_basis(n);
    let mut rest = v.clone();
    let mut out = Vec::with_capacity(basis.len());
    for (r, psi) in basis.iter().enumerate() {
        let lead = Label::Pair(2 * r as u32, r as u32);
        let c = rest.coeff(&lead);
        rest.axpy(&-c.clone(), psi)?;
        out.push(c);
    }
    if rest.is_zero() {
        Ok(out)
    } else {
        Err(Error::InvalidInput("expression is not in the kernel of the derivative".into()))
    }
}

fn need_sigma(v: &ValExpr) -> Result<u32> {
    if v.basis().family != Family::CSigmaLam {
        return Err(Error::UnsupportedBasis(format!(
            "expected a C-SigmaLam expression, got {}",
            v.basis()
        )));
    }
    Ok(v.basis().ambient)
}

/// Converts any curved complex expression to C-SigmaLam.
fn to_sigma(v: &ValExpr) -> Result<ValExpr> {
    if v.basis().family == Family::CSigmaLam {
        return Ok(v.clone());
    }
    bases::convert(v, Family::CSigmaLam)
}

/// Σ_{l=r}^{n−r} a_{2l,r} C(n−2r, l−r) λ^{n−l−r} for each r.
pub fn image_obstructions(v: &ValExpr) -> Result<Vec<Scalar>> {
    let v = to_sigma(v)?;
    let n = v.basis().ambient;
    Ok((0..=n / 2)
        .map(|r| {
            (r..=(n - r)).fold(Scalar::zero(), |acc, l| {
                acc + v.coeff(&Label::Pair(2 * l, r))
                    * binomial_s((n - 2 * r) as i64, (l - r) as i64)
                    * Scalar::lambda().powi((n - l - r) as i32)
            })
        })
        .collect())
}

/// True iff `v` lies in the image of ∂ on the complex space form.
pub fn image_membership_complex(v: &ValExpr) -> Result<bool> {
    Ok(image_obstructions(v)?.iter().all(|c| c.is_zero()))
}

/// A preimage Σ a_{k,r} J(P_{2n−4r, k−2r+1}) of `v` and a basis of ker ∂.
pub fn preimage_complex(v: &ValExpr) -> Result<(ValExpr, Vec<ValExpr>)> {
    let v = to_sigma(v)?;
    if !image_membership_complex(&v)? {
        return Err(Error::NotInImage(
            "the expression is not in the image of the derivative".into(),
        ));
    }
    let n = v.basis().ambient;
    let mut out = ValExpr::zero(sigma_basis(n));
    for (l, a) in v.terms() {
        let Label::Pair(k, r) = *l else { unreachable!() };
        let p = p_poly(2 * n - 4 * r, k - 2 * r + 1)?;
        out.axpy(a, &bases::j_complex(n, r, &p)?)?;
    }
    Ok((out, stable_basis(n)))
}

/// φ^k = Σ_j (λ/4)^j τ_{k+2j} on R-Sigma(d), including τ_d when d − k is even.
pub fn crofton(d: u32, k: u32) -> Result<ValExpr> {
    if k > d {
        return Err(Error::IndexOutOfRange(format!("Crofton index {k} exceeds d = {d}")));
    }
    let tb = Basis::new(Family::RTau, d);
    let mut tau = ValExpr::zero(tb);
    let quarter = Scalar::lambda() / Scalar::from_int(4);
    let mut j = 0;
    while k + 2 * j <= d {
        tau.add_term(Label::Single(k + 2 * j), quarter.powi(j as i32))?;
        j += 1;
    }
    bases::convert(&tau, Family::RSigma)
}

/// ∂φ^k = k! ω_k / (π̂^k ω_{d−k}) σ_{k−1}; the scalar factor for k >= 1.
pub fn crofton_derivative_factor(d: u32, k: u32) -> Scalar {
    factorial_s(k) * omega(k) / (Scalar::pi().powi(k as i32) * omega(d - k))
}

/// χ on R-Sigma(d): the Crofton valuation φ^0.
pub fn euler_real(d: u32) -> ValExpr {
    crofton(d, 0).expect("k = 0 is valid")
}

/// A preimage of `v` ∈ span{σ_0..σ_{d−1}} through Crofton valuations, and ker ∂ = span{χ}.
pub fn preimage_real(v: &ValExpr) -> Result<(ValExpr, Vec<ValExpr>)> {
    let b = v.basis();
    let d = b.ambient;
    let v = match b.family {
        Family::RSigma => v.clone(),
        Family::RTau => bases::convert(v, Family::RSigma)?,
        Family::RHyper => v.relabel(Basis::new(Family::RSigma, d), |l| l)?,
        _ => {
            return Err(Error::UnsupportedBasis(format!(
                "expected a real curved expression, got {b}"
            )))
        }
    };
    if !v.coeff(&Label::Single(d)).is_zero() {
        return Err(Error::NotInImage(
            "the σ_d coefficient must vanish for the expression to be a derivative".into(),
        ));
    }
    let mut out = ValExpr::zero(Basis::new(Family::RSigma, d));
    for (l, c) in v.terms() {
        let i = l.degree();
        let f = crofton_derivative_factor(d, i + 1).inv().expect("nonzero");
        out.axpy(&(c.clone() * f), &crofton(d, i + 1)?)?;
    }
    Ok((out, vec![euler_real(d)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaceform::derivative::{derivative_complex, derivative_real_sigma};

    #[test]
    fn psi_zero_n1() {
        let b = sigma_basis(1);
        let expect =
            ValExpr::from_terms(b, [(Label::Pair(0, 0), Scalar::one()), (Label::Pair(2, 0), Scalar::lambda())])
                .unwrap();
        assert_eq!(stable_valuation(1, 0).unwrap(), expect);
    }

    #[test]
    fn stable_basis_is_killed() {
        for n in 1..=6 {
            let d = derivative_complex(n, Family::CSigmaLam).unwrap();
            for psi in stable_basis(n) {
                assert!(d.apply(&psi).unwrap().is_zero(), "n = {n}");
            }
        }
    }

    #[test]
    fn euler_flat_limit() {
        for n in 1..=5 {
            let chi = euler_complex(n)
                .try_map(|x| x.subst_lambda(&num_traits::Zero::zero()))
                .unwrap();
            let mu = bases::convert(&chi, Family::CMuLam).unwrap();
            let expect =
                ValExpr::basis_element(Basis::new(Family::CMuLam, n), Label::Pair(0, 0)).unwrap();
            assert_eq!(mu, expect, "n = {n}");
        }
    }

    #[test]
    fn obstruction_example() {
        let b = sigma_basis(2);
        let good = ValExpr::from_terms(
            b,
            [(Label::Pair(0, 0), Scalar::one()), (Label::Pair(2, 0), -Scalar::lambda() / Scalar::from_int(2))],
        )
        .unwrap();
        assert!(image_membership_complex(&good).unwrap());
        let bad = ValExpr::basis_element(b, Label::Pair(2, 0)).unwrap();
        assert!(!image_membership_complex(&bad).unwrap());
        assert!(matches!(preimage_complex(&bad), Err(Error::NotInImage(_))));
    }

    #[test]
    fn complex_preimage_solves() {
        for n in 1..=4 {
            let d = derivative_complex(n, Family::CSigmaLam).unwrap();
            for l in sigma_basis(n).labels() {
                let v = d.column(&l);
                let (x, _) = preimage_complex(&v).unwrap();
                assert_eq!(d.apply(&x).unwrap(), v, "n = {n}, label {l}");
            }
        }
    }

    #[test]
    fn crofton_derivative() {
        for d in 1..=6 {
            let dm = derivative_real_sigma(d);
            assert!(dm.apply(&euler_real(d)).unwrap().is_zero(), "d = {d}");
            for k in 1..=d {
                let got = dm.apply(&crofton(d, k).unwrap()).unwrap();
                let expect = ValExpr::basis_element(dm.domain(), Label::Single(k - 1))
                    .unwrap()
                    .scale(&crofton_derivative_factor(d, k));
                assert_eq!(got, expect, "d = {d}, k = {k}");
            }
        }
    }
}

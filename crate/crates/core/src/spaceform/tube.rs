//! The tube operator T_t = exp(t∂) in closed form.

use crate::algebra::{Basis, Family, Label, OperatorMatrix, ValExpr};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, TrigPoly};
use crate::sl2::phi_coeff;

use super::bases;

/// T_t on C-SigmaLam(n): σ_{k,r} ↦ Σ_j φ_{2n−4r, k−2r, j} σ_{j+2r,r}.
pub fn tube_complex(n: u32) -> OperatorMatrix<TrigPoly> {
    let b = Basis::new(Family::CSigmaLam, n);
    OperatorMatrix::from_columns(b, b, |l| {
        let Label::Pair(k, r) = l else { unreachable!() };
        let m = 2 * n - 4 * r;
        let mut e = ValExpr::zero(b);
        for j in 0..=m {
            e.add_term(Label::Pair(j + 2 * r, r), phi_coeff(m, k - 2 * r, j))?;
        }
        Ok(e)
    })
    .expect("labels stay in C-SigmaLam")
}

/// One column of [`tube_complex`].
pub fn tube_complex_column(n: u32, k: u32, r: u32) -> Result<ValExpr<TrigPoly>> {
    let l = Label::Pair(k, r);
    Basis::new(Family::CSigmaLam, n).check(&l)?;
    Ok(tube_complex(n).column(&l))
}

/// λ = 0 image of [`tube_complex`], as polynomials in t on U-Sigma(n).
pub fn tube_complex_flat(n: u32) -> Result<OperatorMatrix<TrigPoly>> {
    let b = Basis::new(Family::USigma, n);
    tube_complex(n)
        .try_map(|p| p.specialize_flat())?
        .rebase(b, b)
}

fn volume_column(d: u32, flat: bool) -> Result<ValExpr<TrigPoly>> {
    let b = Basis::new(Family::RSigma, d);
    let mut e = ValExpr::zero(b);
    for j in 0..d {
        let integrand = TrigPoly::term(Scalar::one(), d - 1 - j, j, 0);
        let w = if flat {
            integrand.specialize_flat()?.integrate_t()?
        } else {
            integrand.integrate()?
        };
        e.add_term(Label::Single(j), w)?;
    }
    e.add_term(Label::Single(d), TrigPoly::one())?;
    Ok(e)
}

fn tube_real_impl(d: u32, flat: bool) -> Result<OperatorMatrix<TrigPoly>> {
    if d == 0 {
        return Err(Error::IndexOutOfRange("the real space form needs d >= 1".into()));
    }
    let b = Basis::new(Family::RSigma, d);
    OperatorMatrix::from_columns(b, b, |l| {
        let i = l.degree();
        if i == d {
            return volume_column(d, flat);
        }
        let mut e = ValExpr::zero(b);
        for j in 0..d {
            let p = phi_coeff(d - 1, i, j);
            e.add_term(Label::Single(j), if flat { p.specialize_flat()? } else { p })?;
        }
        Ok(e)
    })
}

/// T_t on R-Sigma(d); the volume column carries λ in denominators.
pub fn tube_real(d: u32) -> Result<OperatorMatrix<TrigPoly>> {
    tube_real_impl(d, false)
}

/// The λ = 0 tube on R-Sigma(d), computed along the flat integration path.
pub fn tube_real_flat(d: u32) -> Result<OperatorMatrix<TrigPoly>> {
    tube_real_impl(d, true)
}

/// The tube on the hyperplane R-Hyper(d).
pub fn tube_real_hyper(d: u32) -> Result<OperatorMatrix<TrigPoly>> {
    super::derivative::rebase_hyper(&tube_real(d)?)
}

/// The tube of a curved basis, in that basis.
pub fn tube(b: Basis) -> Result<OperatorMatrix<TrigPoly>> {
    match b.family {
        Family::CSigmaLam => Ok(tube_complex(b.ambient)),
        f if f.flat_twin().is_some() => {
            bases::conjugate(&tube_complex(b.ambient), f, |x| TrigPoly::constant(x.clone()))
        }
        Family::RSigma => tube_real(b.ambient),
        Family::RTau => bases::conjugate(&tube_real(b.ambient)?, Family::RTau, |x| {
            TrigPoly::constant(x.clone())
        }),
        Family::RHyper => tube_real_hyper(b.ambient),
        _ => Err(Error::UnsupportedBasis(format!(
            "{b} is a flat basis; the curved tube is not defined there"
        ))),
    }
}

/// The tube of a curved basis with λ set to 0. The real volume column has
/// 1/λ in its coefficients, so that case is rebuilt from the flat integrals.
pub fn tube_at_zero_curvature(b: Basis) -> Result<OperatorMatrix<TrigPoly>> {
    let lift = |x: &Scalar| TrigPoly::constant(x.clone());
    match b.family {
        Family::RSigma => tube_real_flat(b.ambient),
        Family::RTau => bases::conjugate(&tube_real_flat(b.ambient)?, Family::RTau, lift)?
            .try_map(TrigPoly::specialize_flat),
        Family::RHyper => super::derivative::rebase_hyper(&tube_real_flat(b.ambient)?),
        _ => tube(b)?.try_map(TrigPoly::specialize_flat),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flat;
    use crate::scalar::omega;

    #[test]
    fn n1_sigma_one_column() {
        let col = tube_complex_column(1, 1, 0).unwrap();
        let (s, c, l) = (TrigPoly::s(), TrigPoly::c(), Scalar::lambda());
        let two = Scalar::from_int(2);
        let expect = [
            (Label::Pair(0, 0), s.mul(&c).scale(&two)),
            (
                Label::Pair(1, 0),
                TrigPoly::one().sub(&s.mul(&s).scale(&(two.clone() * l.clone()))),
            ),
            (Label::Pair(2, 0), s.mul(&c).scale(&-(two * l))),
        ];
        let b = Basis::new(Family::CSigmaLam, 1);
        assert_eq!(col, ValExpr::from_terms(b, expect).unwrap());
    }

    #[test]
    fn starts_at_identity() {
        for n in 1..=4 {
            let t = tube_complex(n);
            assert_eq!(t.at_zero(), OperatorMatrix::identity(t.domain()));
        }
        for d in 1..=6 {
            let t = tube_real(d).unwrap();
            assert_eq!(t.at_zero(), OperatorMatrix::identity(t.domain()));
        }
    }

    #[test]
    fn complex_flat_limit_matches_flat_tube() {
        for n in 1..=4 {
            let to = flat::unitary_change(n, Family::UPi, Family::USigma).unwrap().to_trig();
            let back = flat::unitary_change(n, Family::USigma, Family::UPi).unwrap().to_trig();
            let flat_sigma = to
                .compose(&flat::tube_flat_pi_matrix(n).compose(&back).unwrap())
                .unwrap();
            assert_eq!(tube_complex_flat(n).unwrap(), flat_sigma, "n = {n}");
        }
    }

    #[test]
    fn real_flat_limit_matches_steiner() {
        for d in 1..=6 {
            let rb = Basis::new(Family::RSigma, d);
            let ob = Basis::new(Family::OMu, d);
            let scale = OperatorMatrix::from_columns(rb, ob, |l| {
                let i = l.degree();
                let w = if i < d {
                    Scalar::from_int((d - i) as i64) * omega(d - i)
                } else {
                    Scalar::one()
                };
                ValExpr::from_terms(ob, [(l, w)])
            })
            .unwrap()
            .to_trig();
            let lhs = scale.compose(&tube_real_flat(d).unwrap()).unwrap();
            let rhs = flat::tube_flat_intrinsic_matrix(d).compose(&scale).unwrap();
            assert_eq!(lhs, rhs, "d = {d}");
        }
    }

    #[test]
    fn real_volume_column_d2() {
        let t = tube_real(2).unwrap();
        let col = t.column(&Label::Single(2));
        let expect_0 = TrigPoly::one().sub(&TrigPoly::c()).scale(&Scalar::lambda().inv().unwrap());
        assert_eq!(col.coeff(&Label::Single(0)), expect_0);
        assert_eq!(col.coeff(&Label::Single(1)), TrigPoly::s());
        assert_eq!(col.coeff(&Label::Single(2)), TrigPoly::one());
    }

    #[test]
    fn solves_cauchy_problem() {
        use crate::spaceform::derivative::{derivative_complex, derivative_real_sigma};
        for n in 1..=4 {
            let t = tube_complex(n);
            let d = derivative_complex(n, Family::CSigmaLam).unwrap().to_trig();
            assert_eq!(t.derivative(), d.compose(&t).unwrap(), "n = {n}");
        }
        for dim in 1..=6 {
            let t = tube_real(dim).unwrap();
            let d = derivative_real_sigma(dim).to_trig();
            assert_eq!(t.derivative(), d.compose(&t).unwrap(), "d = {dim}");
        }
    }
}

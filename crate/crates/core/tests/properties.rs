//! Property tests for the scalar layer, the model space and the operators.

use num_rational::BigRational;
use proptest::prelude::*;
use valtube::algebra::{Basis, Family, Label, ValExpr};
use valtube::emit::parse_scalar;
use valtube::scalar::{json, omega, RhoScalar, Ring, Scalar, TrigPoly};
use valtube::sl2::{self, HomogPoly};
use valtube::spaceform::{bases, derivative as der, kernel, tube};

fn mono() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4, 0i32..=3, 0i32..=2).prop_map(|(p, q, l, pi)| {
        Scalar::monomial(BigRational::new(p.into(), q.into()), l, pi)
    })
}

fn poly() -> impl Strategy<Value = Scalar> {
    prop::collection::vec(mono(), 0..4).prop_map(|ts| ts.into_iter().fold(Scalar::zero(), |a, b| a + b))
}

/// Rational functions p/q with small support; q is never zero.
fn scalar() -> impl Strategy<Value = Scalar> {
    let den = prop::collection::vec(mono(), 1..3).prop_map(|ts| ts.into_iter().fold(Scalar::zero(), |a, b| a + b));
    (poly(), den).prop_map(|(p, q)| if q.is_zero() { p } else { p / q })
}

fn nonzero() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |x| !x.is_zero())
}

fn trig() -> impl Strategy<Value = TrigPoly> {
    prop::collection::vec((poly(), 0u32..=4, 0u32..=1, 0u32..=2), 0..4).prop_map(|ts| {
        ts.into_iter()
            .fold(TrigPoly::zero(), |a, (k, s, c, t)| a.add(&TrigPoly::term(k, s, c, t)))
    })
}

/// Trig polynomials without t, the class closed under integration.
fn trig_no_t() -> impl Strategy<Value = TrigPoly> {
    prop::collection::vec((poly(), 0u32..=4, 0u32..=1), 0..4).prop_map(|ts| {
        ts.into_iter()
            .fold(TrigPoly::zero(), |a, (k, s, c)| a.add(&TrigPoly::term(k, s, c, 0)))
    })
}

fn complex_expr(n: u32) -> impl Strategy<Value = ValExpr> {
    let b = Basis::new(Family::CSigmaLam, n);
    let labels = b.labels();
    prop::collection::vec(prop::option::of(poly()), labels.len()).prop_map(move |cs| {
        let mut v = ValExpr::zero(b);
        for (l, c) in labels.iter().zip(cs) {
            if let Some(c) = c {
                v.add_term(*l, c).unwrap();
            }
        }
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert!((a.clone() - a.clone()).is_zero());
    }

    #[test]
    fn inverses(a in nonzero()) {
        prop_assert!((a.clone() * a.inv().unwrap()).is_one());
        prop_assert_eq!(a.inv().unwrap().inv().unwrap(), a);
    }

    #[test]
    fn canonical_form_is_idempotent(a in scalar()) {
        let again = Scalar::from_polys(a.numer().clone(), a.denom().clone()).unwrap();
        prop_assert_eq!(&again, &a);
        prop_assert_eq!(again.to_string(), a.to_string());
    }

    #[test]
    fn parse_display_roundtrip(a in scalar()) {
        prop_assert_eq!(parse_scalar(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn json_roundtrips(a in scalar(), p in trig(), re in scalar(), im in scalar()) {
        let j = json::scalar_to_json(&a);
        prop_assert_eq!(json::scalar_from_json(&j).unwrap(), a);
        let j = json::trig_to_json(&p);
        let back = json::trig_from_json(&j).unwrap();
        prop_assert_eq!(json::trig_to_json(&back).to_string(), j.to_string());
        prop_assert_eq!(back, p);
        let r = RhoScalar::new(re, im);
        prop_assert_eq!(json::rho_from_json(&json::rho_to_json(&r)).unwrap(), r);
    }

    #[test]
    fn derivative_undoes_integration(p in trig_no_t()) {
        let i = p.integrate().unwrap();
        prop_assert_eq!(i.derivative(), p);
        prop_assert!(i.at_zero().is_zero());
    }

    #[test]
    fn leibniz(p in trig(), q in trig()) {
        let lhs = p.mul(&q).derivative();
        let rhs = p.derivative().mul(&q).add(&p.mul(&q.derivative()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn trig_ring_laws(p in trig(), q in trig(), r in trig()) {
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn omega_recursion(k in 2u32..40) {
        let two_pi = Scalar::from_int(2) * Scalar::pi();
        prop_assert_eq!(omega(k), two_pi / Scalar::from_int(k as i64) * omega(k - 2));
    }

    #[test]
    fn rho_squares_to_minus_lambda(a in poly(), b in poly()) {
        let x = RhoScalar::new(a.clone(), b.clone());
        let n = Ring::mul(&x, &x.conj());
        prop_assert_eq!(n, RhoScalar::from_scalar(a.clone() * a + Scalar::lambda() * b.clone() * b));
    }

    #[test]
    fn ylambda_pi_is_a_section(m in (0u32..=5).prop_map(|h| 2 * h), cs in prop::collection::vec(poly(), 11)) {
        let mut p = HomogPoly::zero(m);
        for k in 0..=m {
            p.add_term(k, cs[k as usize].clone()).unwrap();
        }
        let y_m = HomogPoly::monomial(m, 0, Scalar::one()).unwrap();
        let z = p.z_apply().unwrap() / y_m.z_apply().unwrap();
        let p = p.sub(&y_m.scale(&z)).unwrap();
        prop_assert!(p.z_apply().unwrap().is_zero());
        prop_assert_eq!(sl2::pi_map(&p).unwrap().op_ylambda(), p);
    }

    #[test]
    fn preimage_inverts_derivative(x in (1u32..=3).prop_flat_map(complex_expr)) {
        let d = der::derivative_complex(x.basis().ambient, Family::CSigmaLam).unwrap();
        let v = d.apply(&x).unwrap();
        let (w, ker) = kernel::preimage_complex(&v).unwrap();
        prop_assert_eq!(d.apply(&w).unwrap(), v);
        for k in ker {
            prop_assert!(d.apply(&k).unwrap().is_zero());
        }
    }

    #[test]
    fn basis_changes_roundtrip(x in (1u32..=3).prop_flat_map(complex_expr), to in 0usize..3) {
        let to = [Family::CMuLam, Family::CTauLam, Family::CPiLam][to];
        let y = bases::convert(&x, to).unwrap();
        prop_assert_eq!(bases::convert(&y, Family::CSigmaLam).unwrap(), x);
    }

    #[test]
    fn tube_starts_at_identity_with_velocity_derivative(n in 1u32..=3, k in 0usize..20) {
        let t = tube::tube_complex(n);
        let d = der::derivative_complex(n, Family::CSigmaLam).unwrap();
        let labels = t.domain().labels();
        let l: Label = labels[k % labels.len()];
        let col = t.column(&l);
        let at0 = col.map(|p| p.at_zero());
        prop_assert_eq!(at0, ValExpr::basis_element(t.domain(), l).unwrap());
        let vel = col.map(|p| p.derivative().at_zero());
        prop_assert_eq!(vel, d.column(&l));
    }
}

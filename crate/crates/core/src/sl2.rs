//! The model space V^(m) of m-homogeneous polynomials in x, y.
//!
//! A [`HomogPoly`] stores the coefficient of x^k y^{m−k} under key k.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::{
    binomial_s, double_factorial_s, factorial_s, Ring, RhoScalar, Scalar, TrigPoly,
};

#[derive(Clone, Debug, PartialEq)]
pub struct HomogPoly<K: Ring = Scalar> {
    degree: u32,
    coeffs: BTreeMap<u32, K>,
}

pub type TrigHomogPoly = HomogPoly<TrigPoly>;

impl<K: Ring> HomogPoly<K> {
    pub fn zero(m: u32) -> Self {
        HomogPoly {
            degree: m,
            coeffs: BTreeMap::new(),
        }
    }

    /// `c · x^k y^{m−k}`.
    pub fn monomial(m: u32, k: u32, c: K) -> Result<Self> {
        let mut p = HomogPoly::zero(m);
        p.add_term(k, c)?;
        Ok(p)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, K> {
        &self.coeffs
    }

    pub fn coeff(&self, k: u32) -> K {
        self.coeffs.get(&k).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, k: u32, c: K) -> Result<()> {
        if k > self.degree {
            return Err(Error::IndexOutOfRange(format!(
                "x-exponent {k} exceeds degree {}",
                self.degree
            )));
        }
        self.push(k, c);
        Ok(())
    }

    fn push(&mut self, k: u32, c: K) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&k) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.coeffs.remove(&k);
                }
            }
            None => {
                self.coeffs.insert(k, c);
            }
        }
    }

    fn same_degree(&self, o: &Self) -> Result<()> {
        if self.degree != o.degree {
            return Err(Error::InvalidInput(format!(
                "degree mismatch: {} vs {}",
                self.degree, o.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_degree(o)?;
        let mut r = self.clone();
        for (k, c) in &o.coeffs {
            r.push(*k, c.clone());
        }
        Ok(r)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&K::one().neg()))
    }

    pub fn scale(&self, c: &K) -> Self {
        self.map(|v| v.mul(c))
    }

    pub fn map<L: Ring>(&self, f: impl Fn(&K) -> L) -> HomogPoly<L> {
        let mut out = HomogPoly::zero(self.degree);
        for (k, c) in &self.coeffs {
            out.push(*k, f(c));
        }
        out
    }

    /// Polynomial product; degrees add.
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = HomogPoly::zero(self.degree + o.degree);
        for (a, x) in &self.coeffs {
            for (b, y) in &o.coeffs {
                out.push(a + b, x.mul(y));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = HomogPoly::monomial(0, 0, K::one()).expect("constant");
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// X = x ∂/∂y.
    pub fn op_x(&self) -> Self {
        let m = self.degree;
        let mut out = HomogPoly::zero(m);
        for (k, c) in &self.coeffs {
            if *k < m {
                out.push(k + 1, c.scale(&Scalar::from_int((m - k) as i64)));
            }
        }
        out
    }

    /// Y = y ∂/∂x.
    pub fn op_y(&self) -> Self {
        let mut out = HomogPoly::zero(self.degree);
        for (k, c) in &self.coeffs {
            if *k > 0 {
                out.push(k - 1, c.scale(&Scalar::from_int(*k as i64)));
            }
        }
        out
    }

    /// H(x^k y^{m−k}) = (m − 2k) x^k y^{m−k}.
    pub fn op_h(&self) -> Self {
        let m = self.degree as i64;
        let mut out = HomogPoly::zero(self.degree);
        for (k, c) in &self.coeffs {
            out.push(*k, c.scale(&Scalar::from_int(m - 2 * *k as i64)));
        }
        out
    }

    /// Y_λ = Y − λX.
    pub fn op_ylambda(&self) -> Self {
        let lx = self.op_x().map(|c| c.scale(&Scalar::lambda()));
        self.op_y().sub(&lx).expect("same degree")
    }

    /// Z_{m,λ} = (∂²/∂x² + λ∂²/∂y²)^{m/2}; `m` must be even.
    pub fn z_apply(&self) -> Result<K> {
        let m = self.degree;
        if m % 2 == 1 {
            return Err(Error::InvalidInput(format!("Z is defined for even degree, got {m}")));
        }
        let mut acc = K::zero();
        for (k, c) in &self.coeffs {
            acc = acc.add(&c.scale(&z_monomial(m, *k)));
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        let doc = HomogJson {
            m: self.degree,
            terms: self
                .coeffs
                .iter()
                .map(|(k, c)| HomogTerm {
                    k: *k,
                    scalar: c.to_json(),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("polynomial JSON is serializable")
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let doc: HomogJson = serde_json::from_value(v.clone())?;
        let mut p = HomogPoly::zero(doc.m);
        for t in doc.terms {
            p.add_term(t.k, K::from_json(&t.scalar)?)?;
        }
        Ok(p)
    }
}

impl HomogPoly<TrigPoly> {
    /// Entrywise d/dt of a curve in V^(m).
    pub fn derivative(&self) -> Self {
        self.map(|c| c.derivative())
    }
}

#[derive(Serialize, Deserialize)]
struct HomogTerm {
    k: u32,
    scalar: Value,
}

#[derive(Serialize, Deserialize)]
struct HomogJson {
    m: u32,
    terms: Vec<HomogTerm>,
}

/// Z_{m,λ}(x^k y^{m−k}).
pub fn z_monomial(m: u32, k: u32) -> Scalar {
    if k % 2 == 1 {
        return Scalar::zero();
    }
    Scalar::lambda().powi(((m - k) / 2) as i32)
        * binomial_s((m / 2) as i64, (k / 2) as i64)
        * factorial_s(k)
        * factorial_s(m - k)
}

/// p_k(t) = exp(tY_λ)(C(m,k) x^k y^{m−k}) = C(m,k) u^k v^{m−k}
/// with u = xc + ys, v = yc − λxs.
pub fn exp_t_ylambda(k: u32, m: u32) -> Result<TrigHomogPoly> {
    if k > m {
        return Err(Error::IndexOutOfRange(format!("k = {k} exceeds m = {m}")));
    }
    let (s, c) = (TrigPoly::s(), TrigPoly::c());
    let mut u = HomogPoly::zero(1);
    u.push(1, c.clone());
    u.push(0, s.clone());
    let mut v = HomogPoly::zero(1);
    v.push(0, c);
    v.push(1, s.scale(&-Scalar::lambda()));
    Ok(u.pow(k)
        .mul(&v.pow(m - k))
        .map(|x| x.scale(&binomial_s(m as i64, k as i64))))
}

/// φ^λ_{m,k,j}: the coefficient of C(m,j) x^j y^{m−j} in p_k(t).
pub fn phi_coeff(m: u32, k: u32, j: u32) -> TrigPoly {
    let mut out = TrigPoly::zero();
    let neg_lam = -Scalar::lambda();
    for h in 0..=j.min(k) {
        if k - h > m - j {
            continue;
        }
        let coeff = neg_lam.powi((j - h) as i32)
            * binomial_s((m - j) as i64, (k - h) as i64)
            * binomial_s(j as i64, h as i64);
        let s_pow = k + j - 2 * h;
        let c_pow = m + 2 * h - k - j;
        out = out.add(&TrigPoly::term(coeff, s_pow, c_pow, 0));
    }
    out
}

/// Eigenpairs ((2k−m)ρ, e₁^k e₂^{m−k}) of Y_λ, e₁ = ρx + y, e₂ = −ρx + y.
pub fn eigenbasis_ylambda(m: u32) -> Vec<(RhoScalar, HomogPoly<RhoScalar>)> {
    let rho = RhoScalar::rho_unit();
    let mut e1 = HomogPoly::zero(1);
    e1.push(1, rho.clone());
    e1.push(0, RhoScalar::one());
    let mut e2 = HomogPoly::zero(1);
    e2.push(1, rho.neg());
    e2.push(0, RhoScalar::one());
    (0..=m)
        .map(|k| {
            let val = RhoScalar::rho_multiple(Scalar::from_int(2 * k as i64 - m as i64));
            (val, e1.pow(k).mul(&e2.pow(m - k)))
        })
        .collect()
}

/// True iff `p` lies in the image of Y_λ on V^(m).
pub fn in_image_ylambda(p: &HomogPoly<Scalar>) -> bool {
    p.degree % 2 == 1 || p.z_apply().map(|z| z.is_zero()).unwrap_or(false)
}

/// P_{m,k} for 1 ≤ k ≤ m + 1.
pub fn p_poly(m: u32, k: u32) -> Result<HomogPoly<Scalar>> {
    if k == 0 || k > m + 1 {
        return Err(Error::IndexOutOfRange(format!(
            "P_(m,k) needs 1 <= k <= m+1, got m = {m}, k = {k}"
        )));
    }
    let mut p = HomogPoly::zero(m);
    let den = double_factorial_s(k as i64 - 1) * double_factorial_s((m + 1 - k) as i64);
    let mut j = 0;
    while k + 2 * j <= m {
        let e = k + 2 * j;
        let num = double_factorial_s(e as i64 - 1) * double_factorial_s((m - e) as i64 - 1);
        let c = Scalar::lambda().powi(j as i32) * num / &den * binomial_s(m as i64, e as i64);
        p.push(e, c);
        j += 1;
    }
    Ok(p)
}

/// c_{m,k} with Y_λ P_{m,k} = C(m,k−1) x^{k−1} y^{m−k+1} − c_{m,k} x^m.
pub fn c_mk(m: u32, k: u32) -> Scalar {
    if (m + k).is_multiple_of(2) || k == 0 || k > m + 1 {
        return Scalar::zero();
    }
    Scalar::lambda().powi(((m + 1 - k) / 2) as i32) * double_factorial_s(m as i64)
        / (double_factorial_s(k as i64 - 1) * double_factorial_s((m + 1 - k) as i64))
}

/// Π: C(m,k) x^k y^{m−k} ↦ P_{m,k+1}.
pub fn pi_map(p: &HomogPoly<Scalar>) -> Result<HomogPoly<Scalar>> {
    let m = p.degree;
    let mut out = HomogPoly::zero(m);
    for (k, c) in &p.coeffs {
        let w = c / &binomial_s(m as i64, *k as i64);
        out = out.add(&p_poly(m, k + 1)?.scale(&w))?;
    }
    Ok(out)
}

/// A preimage of `p` under Y_λ for even degree, via Π.
pub fn preimage_pi(p: &HomogPoly<Scalar>) -> Result<HomogPoly<Scalar>> {
    if p.degree % 2 == 1 {
        return Err(Error::InvalidInput(
            "the Π section applies to even degree".into(),
        ));
    }
    if !in_image_ylambda(p) {
        return Err(Error::NotInImage(format!(
            "Z(p) = {} is nonzero",
            p.z_apply()?
        )));
    }
    pi_map(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(m: u32, k: u32) -> HomogPoly {
        HomogPoly::monomial(m, k, Scalar::one()).unwrap()
    }

    #[test]
    fn basic_operators() {
        let y2 = mono(2, 0);
        assert_eq!(y2.op_x(), mono(2, 1).scale(&Scalar::from_int(2)));
        let x2 = mono(2, 2);
        assert_eq!(x2.op_y(), mono(2, 1).scale(&Scalar::from_int(2)));
        assert!(mono(2, 1).op_h().is_zero());
        assert_eq!(mono(1, 1).op_ylambda(), mono(1, 0));
        assert_eq!(mono(1, 0).op_ylambda(), mono(1, 1).scale(&-Scalar::lambda()));
        let expect = mono(2, 0).sub(&mono(2, 2).scale(&Scalar::lambda())).unwrap();
        assert_eq!(mono(2, 1).op_ylambda(), expect);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_coeff(1, 1, 0), TrigPoly::s());
        assert_eq!(phi_coeff(1, 1, 1), TrigPoly::c());
        let expect = TrigPoly::term(Scalar::from_int(-2) * Scalar::lambda(), 1, 1, 0);
        assert_eq!(phi_coeff(2, 1, 2), expect);
        let mid = TrigPoly::one().sub(&TrigPoly::term(Scalar::from_int(2) * Scalar::lambda(), 2, 0, 0));
        assert_eq!(phi_coeff(2, 1, 1), mid);
    }

    #[test]
    fn flow_at_small_degree() {
        let p = exp_t_ylambda(0, 1).unwrap();
        assert_eq!(p.coeff(0), TrigPoly::c());
        assert_eq!(p.coeff(1), TrigPoly::s().scale(&-Scalar::lambda()));
        assert!(exp_t_ylambda(3, 2).is_err());
    }

    #[test]
    fn z_examples() {
        assert_eq!(mono(2, 2).z_apply().unwrap(), Scalar::from_int(2));
        assert_eq!(mono(2, 0).z_apply().unwrap(), Scalar::from_int(2) * Scalar::lambda());
        assert!(mono(2, 1).z_apply().unwrap().is_zero());
        assert!(mono(3, 1).z_apply().is_err());
        assert!(in_image_ylambda(&mono(3, 0)));
        assert!(in_image_ylambda(&mono(2, 1)));
        assert!(!in_image_ylambda(&mono(2, 2)));
    }

    #[test]
    fn p_examples() {
        assert_eq!(p_poly(2, 1).unwrap(), mono(2, 1));
        let y = p_poly(2, 1).unwrap().op_ylambda();
        assert_eq!(y, mono(2, 0).sub(&mono(2, 2).scale(&Scalar::lambda())).unwrap());
        assert_eq!(c_mk(2, 1), Scalar::lambda());
        assert!(c_mk(4, 4).is_zero());
        assert!(p_poly(2, 3).unwrap().is_zero());
        assert!(p_poly(2, 0).is_err());
    }

    #[test]
    fn y_of_p_matches_closed_form() {
        for m in 1..9 {
            for k in 1..=m + 1 {
                let lhs = p_poly(m, k).unwrap().op_ylambda();
                let mut rhs = HomogPoly::zero(m);
                rhs.add_term(k - 1, binomial_s(m as i64, (k - 1) as i64)).unwrap();
                rhs.add_term(m, -c_mk(m, k)).unwrap();
                assert_eq!(lhs, rhs, "m = {m}, k = {k}");
            }
        }
    }

    #[test]
    fn preimage_examples() {
        let p = mono(2, 0).sub(&mono(2, 2).scale(&Scalar::lambda())).unwrap();
        let q = preimage_pi(&p).unwrap();
        assert_eq!(q.op_ylambda(), p);
        assert!(preimage_pi(&HomogPoly::zero(2)).unwrap().is_zero());
        assert!(matches!(preimage_pi(&mono(2, 2)), Err(Error::NotInImage(_))));
    }

    #[test]
    fn eigen_middle_vector() {
        let eb = eigenbasis_ylambda(2);
        assert!(eb[1].0.is_zero());
        let mut expect = HomogPoly::zero(2);
        expect.push(0, RhoScalar::one());
        expect.push(2, RhoScalar::from_scalar(Scalar::lambda()));
        assert_eq!(eb[1].1, expect);
    }

    #[test]
    fn json_roundtrip() {
        let p = exp_t_ylambda(1, 3).unwrap();
        let back = TrigHomogPoly::from_json(&p.to_json()).unwrap();
        assert_eq!(back, p);
    }
}

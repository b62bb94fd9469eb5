//! Scalar[s, c, t] modulo c² = 1 − λs², where s = sin_λ(t) and c = cos_λ(t).

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde_json::Value;

use super::field::Scalar;
use super::json;
use super::ring::Ring;
use crate::error::{Error, Result};

/// Exponents of `s^s c^c t^t`; `c` is 0 or 1 in normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TrigExp {
    pub t: u32,
    pub s: u32,
    pub c: u32,
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TrigPoly {
    terms: BTreeMap<TrigExp, Scalar>,
}

fn push(terms: &mut BTreeMap<TrigExp, Scalar>, e: TrigExp, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&e) {
        Some(v) => {
            *v = &*v + &c;
            if v.is_zero() {
                terms.remove(&e);
            }
        }
        None => {
            terms.insert(e, c);
        }
    }
}

/// Adds `coeff · s^s c^c t^t` reducing `c^c` to normal form.
fn push_reduced(terms: &mut BTreeMap<TrigExp, Scalar>, coeff: Scalar, s: u32, c: u32, t: u32) {
    if coeff.is_zero() {
        return;
    }
    let half = c / 2;
    let cr = c % 2;
    // (1 − λs²)^half expanded by the binomial theorem.
    let mut binom = Scalar::one();
    let mlam = -Scalar::lambda();
    let mut mlam_pow = Scalar::one();
    for i in 0..=half {
        let e = TrigExp { t, s: s + 2 * i, c: cr };
        push(terms, e, &coeff * &binom * &mlam_pow);
        binom = binom * Scalar::ratio((half - i) as i64, (i + 1) as i64);
        mlam_pow = &mlam_pow * &mlam;
    }
}

impl TrigPoly {
    pub fn zero() -> Self {
        TrigPoly::default()
    }

    pub fn one() -> Self {
        TrigPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        TrigPoly::term(c, 0, 0, 0)
    }

    /// `coeff · s^s c^c t^t`, reduced.
    pub fn term(coeff: Scalar, s: u32, c: u32, t: u32) -> Self {
        let mut terms = BTreeMap::new();
        push_reduced(&mut terms, coeff, s, c, t);
        TrigPoly { terms }
    }

    pub fn s() -> Self {
        TrigPoly::term(Scalar::one(), 1, 0, 0)
    }

    pub fn c() -> Self {
        TrigPoly::term(Scalar::one(), 0, 1, 0)
    }

    pub fn t() -> Self {
        TrigPoly::term(Scalar::one(), 0, 0, 1)
    }

    pub fn terms(&self) -> &BTreeMap<TrigExp, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value at t = 0, i.e. at (s, c, t) = (0, 1, 0).
    pub fn at_zero(&self) -> Scalar {
        self.terms
            .iter()
            .filter(|(e, _)| e.s == 0 && e.t == 0)
            .fold(Scalar::zero(), |a, (_, c)| a + c)
    }

    /// Coefficient of `s^s c^c t^t` in normal form.
    pub fn coeff(&self, s: u32, c: u32, t: u32) -> Scalar {
        self.terms
            .get(&TrigExp { t, s, c })
            .cloned()
            .unwrap_or_default()
    }

    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().expect("one term");
                (e.s == 0 && e.c == 0 && e.t == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// True when neither s nor c occurs.
    pub fn is_pure_t(&self) -> bool {
        self.terms.keys().all(|e| e.s == 0 && e.c == 0)
    }

    pub fn has_t(&self) -> bool {
        self.terms.keys().any(|e| e.t > 0)
    }

    pub fn add(&self, o: &TrigPoly) -> TrigPoly {
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            push(&mut terms, *e, c.clone());
        }
        TrigPoly { terms }
    }

    pub fn sub(&self, o: &TrigPoly) -> TrigPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> TrigPoly {
        TrigPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Scalar) -> TrigPoly {
        if k.is_zero() {
            return TrigPoly::zero();
        }
        TrigPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn mul(&self, o: &TrigPoly) -> TrigPoly {
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                push_reduced(&mut terms, ca * cb, ea.s + eb.s, ea.c + eb.c, ea.t + eb.t);
            }
        }
        TrigPoly { terms }
    }

    pub fn pow(&self, k: u32) -> TrigPoly {
        let mut r = TrigPoly::one();
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// d/dt with s′ = c, c′ = −λs, t′ = 1.
    pub fn derivative(&self) -> TrigPoly {
        let mut terms = BTreeMap::new();
        let lam = Scalar::lambda();
        for (e, k) in &self.terms {
            if e.s > 0 {
                push_reduced(&mut terms, k * &Scalar::from_int(e.s as i64), e.s - 1, e.c + 1, e.t);
            }
            if e.c > 0 {
                push_reduced(&mut terms, -(k * &lam), e.s + 1, e.c - 1, e.t);
            }
            if e.t > 0 {
                push_reduced(&mut terms, k * &Scalar::from_int(e.t as i64), e.s, e.c, e.t - 1);
            }
        }
        TrigPoly { terms }
    }

    /// The antiderivative vanishing at t = 0.
    ///
    /// λ may appear in denominators of the result; use [`TrigPoly::specialize_flat`]
    /// followed by [`TrigPoly::integrate_t`] for λ = 0.
    pub fn integrate(&self) -> Result<TrigPoly> {
        if self.has_t() {
            return Err(Error::InvalidInput(
                "trig integration requires an integrand without t".into(),
            ));
        }
        let mut out = TrigPoly::zero();
        for (e, k) in &self.terms {
            let prim = if e.c == 1 {
                TrigPoly::term(Scalar::ratio(1, (e.s + 1) as i64), e.s + 1, 0, 0)
            } else {
                integral_s_pow(e.s)
            };
            out = out.add(&prim.scale(k));
        }
        Ok(out)
    }

    /// Substitutes λ = `v` in every coefficient.
    pub fn subst_lambda(&self, v: &BigRational) -> Result<TrigPoly> {
        let mut terms = BTreeMap::new();
        for (e, k) in &self.terms {
            push_reduced(&mut terms, k.subst_lambda(v)?, e.s, e.c, e.t);
        }
        Ok(TrigPoly { terms })
    }

    /// λ = 0 image: s ↦ t, c ↦ 1; the result is a polynomial in t.
    pub fn specialize_flat(&self) -> Result<TrigPoly> {
        let zero = BigRational::zero();
        let mut terms = BTreeMap::new();
        for (e, k) in &self.terms {
            push(
                &mut terms,
                TrigExp { t: e.t + e.s, s: 0, c: 0 },
                k.subst_lambda(&zero)?,
            );
        }
        Ok(TrigPoly { terms })
    }

    /// ∫₀ᵗ for a polynomial in t.
    pub fn integrate_t(&self) -> Result<TrigPoly> {
        if !self.is_pure_t() {
            return Err(Error::InvalidInput(
                "t-integration requires a polynomial in t".into(),
            ));
        }
        let mut terms = BTreeMap::new();
        for (e, k) in &self.terms {
            push(
                &mut terms,
                TrigExp { t: e.t + 1, s: 0, c: 0 },
                k * &Scalar::ratio(1, (e.t + 1) as i64),
            );
        }
        Ok(TrigPoly { terms })
    }

    /// Value of a polynomial in t at a rational point.
    pub fn eval_t(&self, t: &BigRational) -> Result<Scalar> {
        if !self.is_pure_t() {
            return Err(Error::InvalidInput(
                "exact evaluation requires a polynomial in t".into(),
            ));
        }
        let ts = Scalar::from_rational(t);
        Ok(self
            .terms
            .iter()
            .fold(Scalar::zero(), |a, (e, k)| a + k * &ts.powi(e.t as i32)))
    }

    /// Maps every coefficient through `f`.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> TrigPoly {
        let mut terms = BTreeMap::new();
        for (e, k) in &self.terms {
            push(&mut terms, *e, f(k));
        }
        TrigPoly { terms }
    }
}

/// ∫₀ᵗ s^a, by I_a = ((a−1)I_{a−2} − s^{a−1}c)/(aλ).
fn integral_s_pow(a: u32) -> TrigPoly {
    let lam = Scalar::lambda();
    let mut prev2 = TrigPoly::t();
    if a == 0 {
        return prev2;
    }
    let mut prev1 = TrigPoly::one().sub(&TrigPoly::c()).scale(&lam.inv().expect("λ ≠ 0"));
    if a == 1 {
        return prev1;
    }
    for k in 2..=a {
        let next = prev2
            .scale(&Scalar::from_int((k - 1) as i64))
            .sub(&TrigPoly::term(Scalar::one(), k - 1, 1, 0))
            .scale(&(Scalar::from_int(k as i64) * &lam).inv().expect("λ ≠ 0"));
        prev2 = prev1;
        prev1 = next;
    }
    prev1
}

impl Ring for TrigPoly {
    const KIND: &'static str = "trig";

    fn zero() -> Self {
        TrigPoly::zero()
    }
    fn one() -> Self {
        TrigPoly::one()
    }
    fn is_zero(&self) -> bool {
        TrigPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        TrigPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        TrigPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        TrigPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        TrigPoly::neg(self)
    }
    fn from_scalar(s: Scalar) -> Self {
        TrigPoly::constant(s)
    }
    fn scale(&self, s: &Scalar) -> Self {
        TrigPoly::scale(self, s)
    }
    fn to_json(&self) -> Value {
        json::trig_to_json(self)
    }
    fn from_json(v: &Value) -> Result<Self> {
        json::trig_from_json(v)
    }
}

pub(crate) fn monomial_text(e: &TrigExp) -> String {
    let mut parts = Vec::new();
    for (name, p) in [("s", e.s), ("c", e.c), ("t", e.t)] {
        match p {
            0 => {}
            1 => parts.push(name.to_string()),
            k => parts.push(format!("{name}^{k}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, k)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let m = monomial_text(e);
            if m.is_empty() {
                write!(f, "({k})")?;
            } else if k.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({k})*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TrigPoly({self})")
    }
}

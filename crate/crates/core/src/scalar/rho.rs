//! Quadratic extension ℚ(λ, π̂)[ρ] with ρ² = −λ.

use std::fmt;

use serde_json::Value;

use super::field::Scalar;
use super::json;
use super::ring::{Field, Ring};
use crate::error::Result;

/// `re + rho·ρ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RhoScalar {
    pub re: Scalar,
    pub rho: Scalar,
}

impl RhoScalar {
    pub fn new(re: Scalar, rho: Scalar) -> Self {
        RhoScalar { re, rho }
    }

    /// The formal square root of −λ.
    pub fn rho_unit() -> Self {
        RhoScalar::new(Scalar::zero(), Scalar::one())
    }

    pub fn from_scalar(s: Scalar) -> Self {
        RhoScalar::new(s, Scalar::zero())
    }

    /// `c·ρ`.
    pub fn rho_multiple(c: Scalar) -> Self {
        RhoScalar::new(Scalar::zero(), c)
    }

    /// `a − bρ`.
    pub fn conj(&self) -> Self {
        RhoScalar::new(self.re.clone(), -&self.rho)
    }

    /// `a² + λb²`, the product with the conjugate.
    pub fn norm(&self) -> Scalar {
        &self.re * &self.re + Scalar::lambda() * &self.rho * &self.rho
    }
}

impl Ring for RhoScalar {
    const KIND: &'static str = "rho";

    fn zero() -> Self {
        RhoScalar::default()
    }
    fn one() -> Self {
        RhoScalar::from_scalar(Scalar::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.rho.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        RhoScalar::new(&self.re + &o.re, &self.rho + &o.rho)
    }
    fn sub(&self, o: &Self) -> Self {
        RhoScalar::new(&self.re - &o.re, &self.rho - &o.rho)
    }
    fn mul(&self, o: &Self) -> Self {
        let lam = Scalar::lambda();
        RhoScalar::new(
            &self.re * &o.re - lam * &self.rho * &o.rho,
            &self.re * &o.rho + &o.re * &self.rho,
        )
    }
    fn neg(&self) -> Self {
        RhoScalar::new(-&self.re, -&self.rho)
    }
    fn from_scalar(s: Scalar) -> Self {
        RhoScalar::from_scalar(s)
    }
    fn scale(&self, s: &Scalar) -> Self {
        RhoScalar::new(&self.re * s, &self.rho * s)
    }
    fn to_json(&self) -> Value {
        json::rho_to_json(self)
    }
    fn from_json(v: &Value) -> Result<Self> {
        json::rho_from_json(v)
    }
}

impl Field for RhoScalar {
    fn inv(&self) -> Option<Self> {
        let n = self.norm().inv()?;
        Some(self.conj().scale(&n))
    }
}

impl fmt::Display for RhoScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.rho.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "({})*rho", self.rho),
            (false, false) => write!(f, "{} + ({})*rho", self.re, self.rho),
        }
    }
}

use std::fmt;

use serde_json::Value;

use super::field::Scalar;
use crate::error::{Error, Result};

/// Coefficient ring for valuation expressions and operator matrices.
///
/// Every ring is an algebra over [`Scalar`].
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Tag used in JSON documents.
    const KIND: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_scalar(s: Scalar) -> Self;
    fn scale(&self, s: &Scalar) -> Self;

    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, o: &Self) -> Result<Self> {
        let inv = o.inv().ok_or(Error::DivisionByZero)?;
        Ok(self.mul(&inv))
    }
}

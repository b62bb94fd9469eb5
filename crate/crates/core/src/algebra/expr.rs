//! Sparse linear combinations of basis elements.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::basis::{Basis, Family, Label};
use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct ValExpr<K: Ring = Scalar> {
    basis: Basis,
    terms: BTreeMap<Label, K>,
}

impl<K: Ring> ValExpr<K> {
    pub fn zero(basis: Basis) -> Self {
        ValExpr {
            basis,
            terms: BTreeMap::new(),
        }
    }

    /// The basis element `l`; fails when `l` is out of range.
    pub fn basis_element(basis: Basis, l: Label) -> Result<Self> {
        let mut e = ValExpr::zero(basis);
        e.add_term(l, K::one())?;
        Ok(e)
    }

    pub fn from_terms(basis: Basis, terms: impl IntoIterator<Item = (Label, K)>) -> Result<Self> {
        let mut e = ValExpr::zero(basis);
        for (l, c) in terms {
            e.add_term(l, c)?;
        }
        Ok(e)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Label, K> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, l: &Label) -> K {
        self.terms.get(l).cloned().unwrap_or_else(K::zero)
    }

    /// Adds `c·l`; out-of-range labels are an error.
    pub fn add_term(&mut self, l: Label, c: K) -> Result<()> {
        self.basis.check(&l)?;
        self.push(l, c);
        Ok(())
    }

    /// Adds `c·l`, dropping the term when `l` is out of range.
    pub fn add_coerced(&mut self, l: Label, c: K) {
        if self.basis.contains(&l) {
            self.push(l, c);
        }
    }

    fn push(&mut self, l: Label, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&l) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&l);
                }
            }
            None => {
                self.terms.insert(l, c);
            }
        }
    }

    fn same_basis(&self, o: &Self) -> Result<()> {
        if self.basis != o.basis {
            return Err(Error::BasisMismatch {
                expected: self.basis.to_string(),
                found: o.basis.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_basis(o)?;
        let mut r = self.clone();
        for (l, c) in &o.terms {
            r.push(*l, c.clone());
        }
        Ok(r)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, k: &K) -> Self {
        self.map(|c| c.mul(k))
    }

    pub fn scale_scalar(&self, k: &Scalar) -> Self {
        self.map(|c| c.scale(k))
    }

    /// Adds `k·o` in place.
    pub fn axpy(&mut self, k: &K, o: &Self) -> Result<()> {
        self.same_basis(o)?;
        for (l, c) in &o.terms {
            self.push(*l, c.mul(k));
        }
        Ok(())
    }

    /// Applies `f` to every coefficient, possibly changing the ring.
    pub fn map<L: Ring>(&self, f: impl Fn(&K) -> L) -> ValExpr<L> {
        let mut out = ValExpr::zero(self.basis);
        for (l, c) in &self.terms {
            out.push(*l, f(c));
        }
        out
    }

    pub fn try_map<L: Ring>(&self, f: impl Fn(&K) -> Result<L>) -> Result<ValExpr<L>> {
        let mut out = ValExpr::zero(self.basis);
        for (l, c) in &self.terms {
            out.push(*l, f(c)?);
        }
        Ok(out)
    }

    /// Same coefficients, labels reinterpreted in `basis` (all must be valid there).
    pub fn relabel(&self, basis: Basis, f: impl Fn(Label) -> Label) -> Result<Self> {
        let mut out = ValExpr::zero(basis);
        for (l, c) in &self.terms {
            out.add_term(f(*l), c.clone())?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let doc = ExprJson {
            family: self.basis.family,
            ambient: self.basis.ambient,
            terms: self
                .terms
                .iter()
                .map(|(l, c)| TermJson {
                    label: *l,
                    scalar: c.to_json(),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("expression JSON is serializable")
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let doc: ExprJson = serde_json::from_value(v.clone())?;
        let mut e = ValExpr::zero(Basis::new(doc.family, doc.ambient));
        for t in doc.terms {
            e.add_term(t.label, K::from_json(&t.scalar)?)?;
        }
        Ok(e)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    label: Label,
    scalar: Value,
}

#[derive(Serialize, Deserialize)]
struct ExprJson {
    family: Family,
    ambient: u32,
    terms: Vec<TermJson>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coercion_drops_invalid_terms() {
        let b = Basis::new(Family::UMu, 2);
        let mut e: ValExpr = ValExpr::zero(b);
        e.add_coerced(Label::Pair(3, 0), Scalar::one());
        assert!(e.is_zero());
        assert!(e.add_term(Label::Pair(3, 0), Scalar::one()).is_err());
    }

    #[test]
    fn cancellation_removes_terms() {
        let b = Basis::new(Family::OMu, 3);
        let x: ValExpr = ValExpr::basis_element(b, Label::Single(1)).unwrap();
        assert!(x.sub(&x).unwrap().terms().is_empty());
    }

    #[test]
    fn json_roundtrip() {
        let b = Basis::new(Family::CSigmaLam, 2);
        let e: ValExpr = ValExpr::from_terms(
            b,
            [
                (Label::Pair(0, 0), Scalar::pi()),
                (Label::Pair(2, 1), Scalar::lambda() / Scalar::from_int(3)),
            ],
        )
        .unwrap();
        let j = e.to_json();
        assert_eq!(ValExpr::<Scalar>::from_json(&j).unwrap(), e);
    }
}

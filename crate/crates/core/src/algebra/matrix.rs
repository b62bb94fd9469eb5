//! Sparse linear maps between labeled bases.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::basis::{Basis, Label};
use super::expr::ValExpr;
use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar, TrigPoly};

/// Column-major: `cols[c][r]` is the coefficient of `r` in the image of `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix<K: Ring = Scalar> {
    domain: Basis,
    codomain: Basis,
    cols: BTreeMap<Label, BTreeMap<Label, K>>,
}

impl<K: Ring> OperatorMatrix<K> {
    pub fn zero(domain: Basis, codomain: Basis) -> Self {
        OperatorMatrix {
            domain,
            codomain,
            cols: BTreeMap::new(),
        }
    }

    pub fn identity(basis: Basis) -> Self {
        let mut m = OperatorMatrix::zero(basis, basis);
        for l in basis.labels() {
            m.push(l, l, K::one());
        }
        m
    }

    /// Builds the matrix whose column `l` is `f(l)`.
    pub fn from_columns(
        domain: Basis,
        codomain: Basis,
        mut f: impl FnMut(Label) -> Result<ValExpr<K>>,
    ) -> Result<Self> {
        let mut m = OperatorMatrix::zero(domain, codomain);
        for l in domain.labels() {
            let col = f(l)?;
            if col.basis() != codomain {
                return Err(Error::BasisMismatch {
                    expected: codomain.to_string(),
                    found: col.basis().to_string(),
                });
            }
            for (r, c) in col.terms() {
                m.push(*r, l, c.clone());
            }
        }
        Ok(m)
    }

    pub fn domain(&self) -> Basis {
        self.domain
    }

    pub fn codomain(&self) -> Basis {
        self.codomain
    }

    fn push(&mut self, row: Label, col: Label, v: K) {
        if v.is_zero() {
            return;
        }
        let c = self.cols.entry(col).or_default();
        match c.get_mut(&row) {
            Some(x) => {
                *x = x.add(&v);
                if x.is_zero() {
                    c.remove(&row);
                }
            }
            None => {
                c.insert(row, v);
            }
        }
        let empty = c.is_empty();
        if empty {
            self.cols.remove(&col);
        }
    }

    /// Adds `v` at `(row, col)`; both labels must be valid.
    pub fn add_entry(&mut self, row: Label, col: Label, v: K) -> Result<()> {
        self.codomain.check(&row)?;
        self.domain.check(&col)?;
        self.push(row, col, v);
        Ok(())
    }

    pub fn get(&self, row: &Label, col: &Label) -> K {
        self.cols
            .get(col)
            .and_then(|c| c.get(row))
            .cloned()
            .unwrap_or_else(K::zero)
    }

    /// Nonzero entries as `(row, col, value)`, column-major.
    pub fn entries(&self) -> impl Iterator<Item = (Label, Label, &K)> {
        self.cols
            .iter()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, *c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.cols.values().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.is_empty()
    }

    /// Image of the basis element `col`.
    pub fn column(&self, col: &Label) -> ValExpr<K> {
        let mut e = ValExpr::zero(self.codomain);
        if let Some(c) = self.cols.get(col) {
            for (r, v) in c {
                e.add_coerced(*r, v.clone());
            }
        }
        e
    }

    /// Row `row` as a map from column labels.
    pub fn row(&self, row: &Label) -> BTreeMap<Label, K> {
        self.cols
            .iter()
            .filter_map(|(c, col)| col.get(row).map(|v| (*c, v.clone())))
            .collect()
    }

    pub fn apply(&self, v: &ValExpr<K>) -> Result<ValExpr<K>> {
        if v.basis() != self.domain {
            return Err(Error::BasisMismatch {
                expected: self.domain.to_string(),
                found: v.basis().to_string(),
            });
        }
        let mut out = ValExpr::zero(self.codomain);
        for (l, k) in v.terms() {
            if let Some(c) = self.cols.get(l) {
                for (r, x) in c {
                    out.add_coerced(*r, x.mul(k));
                }
            }
        }
        Ok(out)
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &OperatorMatrix<K>) -> Result<OperatorMatrix<K>> {
        if rhs.codomain != self.domain {
            return Err(Error::BasisMismatch {
                expected: self.domain.to_string(),
                found: rhs.codomain.to_string(),
            });
        }
        let mut out = OperatorMatrix::zero(rhs.domain, self.codomain);
        for (c, col) in &rhs.cols {
            for (mid, x) in col {
                if let Some(scol) = self.cols.get(mid) {
                    for (r, y) in scol {
                        out.push(*r, *c, y.mul(x));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<OperatorMatrix<K>> {
        let mut r = OperatorMatrix::identity(self.domain);
        for _ in 0..k {
            r = self.compose(&r)?;
        }
        Ok(r)
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.domain != o.domain || self.codomain != o.codomain {
            return Err(Error::BasisMismatch {
                expected: format!("{} -> {}", self.domain, self.codomain),
                found: format!("{} -> {}", o.domain, o.codomain),
            });
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        let mut r = self.clone();
        for (row, col, v) in o.entries() {
            r.push(row, col, v.clone());
        }
        Ok(r)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|v| v.neg())
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        self.map(|v| v.scale(k))
    }

    pub fn map<L: Ring>(&self, f: impl Fn(&K) -> L) -> OperatorMatrix<L> {
        let mut out = OperatorMatrix::zero(self.domain, self.codomain);
        for (r, c, v) in self.entries() {
            out.push(r, c, f(v));
        }
        out
    }

    pub fn try_map<L: Ring>(&self, f: impl Fn(&K) -> Result<L>) -> Result<OperatorMatrix<L>> {
        let mut out = OperatorMatrix::zero(self.domain, self.codomain);
        for (r, c, v) in self.entries() {
            out.push(r, c, f(v)?);
        }
        Ok(out)
    }

    /// Same entries on other bases with the same labels.
    pub fn rebase(&self, domain: Basis, codomain: Basis) -> Result<Self> {
        let mut out = OperatorMatrix::zero(domain, codomain);
        for (r, c, v) in self.entries() {
            out.add_entry(r, c, v.clone())?;
        }
        Ok(out)
    }

    /// Restriction to the given domain and codomain labels (zero elsewhere).
    pub fn restrict(&self, domain: Basis, codomain: Basis) -> Self {
        let mut out = OperatorMatrix::zero(domain, codomain);
        for (r, c, v) in self.entries() {
            if domain.contains(&c) && codomain.contains(&r) {
                out.push(r, c, v.clone());
            }
        }
        out
    }

    /// Dense row-major copy in label order.
    pub fn dense(&self) -> Vec<Vec<K>> {
        let rows = self.codomain.labels();
        let cols = self.domain.labels();
        rows.iter()
            .map(|r| cols.iter().map(|c| self.get(r, c)).collect())
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let doc = MatrixJson {
            domain: self.domain,
            codomain: self.codomain,
            entries: self
                .entries()
                .map(|(row, col, v)| EntryJson {
                    row,
                    col,
                    payload: v.to_json(),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("matrix JSON is serializable")
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let doc: MatrixJson = serde_json::from_value(v.clone())?;
        let mut m = OperatorMatrix::zero(doc.domain, doc.codomain);
        for e in doc.entries {
            m.add_entry(e.row, e.col, K::from_json(&e.payload)?)?;
        }
        Ok(m)
    }
}

impl OperatorMatrix<Scalar> {
    pub fn to_trig(&self) -> OperatorMatrix<TrigPoly> {
        self.map(|v| TrigPoly::constant(v.clone()))
    }
}

impl OperatorMatrix<TrigPoly> {
    /// Entrywise d/dt.
    pub fn derivative(&self) -> Self {
        self.map(|v| v.derivative())
    }

    /// Entrywise value at t = 0.
    pub fn at_zero(&self) -> OperatorMatrix<Scalar> {
        self.map(|v| v.at_zero())
    }
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    row: Label,
    col: Label,
    payload: Value,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    domain: Basis,
    codomain: Basis,
    entries: Vec<EntryJson>,
}

//! Exact dense linear algebra over a field of coefficients.

use super::basis::Label;
use super::expr::ValExpr;
use super::matrix::OperatorMatrix;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Reduced row echelon form in place; returns pivot columns.
fn rref<K: Field>(a: &mut [Vec<K>]) -> Vec<usize> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("pivot is nonzero");
        for x in &mut a[r][c..] {
            *x = x.mul(&inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x = x.sub(&p.mul(&f));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<K: Field>(m: &OperatorMatrix<K>) -> usize {
    let mut a = m.dense();
    rref(&mut a).len()
}

/// A basis of the kernel, as expressions in the domain basis.
pub fn kernel<K: Field>(m: &OperatorMatrix<K>) -> Vec<ValExpr<K>> {
    let labels = m.domain().labels();
    let mut a = m.dense();
    let pivots = rref(&mut a);
    let mut out = Vec::new();
    for free in (0..labels.len()).filter(|c| !pivots.contains(c)) {
        let mut v = ValExpr::zero(m.domain());
        v.add_coerced(labels[free], K::one());
        for (row, &pc) in pivots.iter().enumerate() {
            let x = a[row][free].neg();
            v.add_coerced(labels[pc], x);
        }
        out.push(v);
    }
    out
}

/// Some `x` with `m·x = b`, if one exists.
pub fn solve<K: Field>(m: &OperatorMatrix<K>, b: &ValExpr<K>) -> Result<Option<ValExpr<K>>> {
    if b.basis() != m.codomain() {
        return Err(Error::BasisMismatch {
            expected: m.codomain().to_string(),
            found: b.basis().to_string(),
        });
    }
    let rows: Vec<Label> = m.codomain().labels();
    let cols: Vec<Label> = m.domain().labels();
    let mut a = m.dense();
    for (i, r) in rows.iter().enumerate() {
        a[i].push(b.coeff(r));
    }
    let pivots = rref(&mut a);
    if pivots.contains(&cols.len()) {
        return Ok(None);
    }
    let mut x = ValExpr::zero(m.domain());
    for (row, &pc) in pivots.iter().enumerate() {
        x.add_coerced(cols[pc], a[row][cols.len()].clone());
    }
    Ok(Some(x))
}

/// Inverse of a square matrix by Gauss–Jordan elimination.
pub fn inverse<K: Field>(m: &OperatorMatrix<K>) -> Result<OperatorMatrix<K>> {
    let dom = m.domain().labels();
    let cod = m.codomain().labels();
    if dom.len() != cod.len() {
        return Err(Error::InvalidInput("inverse of a non-square matrix".into()));
    }
    let n = dom.len();
    let mut a = m.dense();
    for (i, row) in a.iter_mut().enumerate() {
        for j in 0..n {
            row.push(if i == j { K::one() } else { K::zero() });
        }
    }
    let pivots = rref(&mut a);
    if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
        return Err(Error::DivisionByZero);
    }
    let mut out = OperatorMatrix::zero(m.codomain(), m.domain());
    for (i, row) in a.iter().enumerate() {
        for (j, cl) in cod.iter().enumerate() {
            let v = &row[n + j];
            if !v.is_zero() {
                out.add_entry(dom[i], *cl, v.clone())?;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Basis, Family};
    use crate::scalar::Scalar;

    fn sample() -> OperatorMatrix {
        let b = Basis::new(Family::OMu, 2);
        let mut m = OperatorMatrix::zero(b, b);
        let l = |i| Label::Single(i);
        m.add_entry(l(0), l(0), Scalar::lambda()).unwrap();
        m.add_entry(l(1), l(0), Scalar::one()).unwrap();
        m.add_entry(l(0), l(1), Scalar::pi()).unwrap();
        m.add_entry(l(2), l(2), Scalar::from_int(3)).unwrap();
        m
    }

    #[test]
    fn inverse_composes_to_identity() {
        let m = sample();
        let inv = inverse(&m).unwrap();
        assert_eq!(m.compose(&inv).unwrap(), OperatorMatrix::identity(m.domain()));
        assert_eq!(rank(&m), 3);
    }

    #[test]
    fn kernel_of_singular_map() {
        let b = Basis::new(Family::OMu, 1);
        let mut m = OperatorMatrix::zero(b, b);
        m.add_entry(Label::Single(0), Label::Single(1), Scalar::lambda())
            .unwrap();
        let k = kernel(&m);
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).unwrap().is_zero());
        let rhs = ValExpr::basis_element(b, Label::Single(1)).unwrap();
        assert!(solve(&m, &rhs).unwrap().is_none());
        let rhs = ValExpr::basis_element(b, Label::Single(0)).unwrap();
        let x = solve(&m, &rhs).unwrap().unwrap();
        assert_eq!(m.apply(&x).unwrap(), rhs);
    }
}

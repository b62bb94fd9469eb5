//! Maps between space forms that commute with the tube.

use crate::algebra::{Basis, Family, Label, OperatorMatrix, ValExpr};
use crate::error::{Error, Result};

/// G: σ_{k,r} ↦ σ_{k+2j,r+j} from C-SigmaLam(n) to C-SigmaLam(n+2j).
pub fn map_g(n: u32, j: u32) -> OperatorMatrix {
    let (from, to) = (
        Basis::new(Family::CSigmaLam, n),
        Basis::new(Family::CSigmaLam, n + 2 * j),
    );
    OperatorMatrix::from_columns(from, to, |l| {
        let Label::Pair(k, r) = l else { unreachable!() };
        ValExpr::basis_element(to, Label::Pair(k + 2 * j, r + j))
    })
    .expect("shifted labels are valid")
}

/// F: σ_j ↦ σ_{2r+j,r} from R-Hyper(2n−4r+1) to C-SigmaLam(n).
pub fn map_f(n: u32, r: u32) -> Result<OperatorMatrix> {
    if 2 * r > n {
        return Err(Error::IndexOutOfRange(format!("need 2r <= n, got n = {n}, r = {r}")));
    }
    let from = Basis::new(Family::RHyper, 2 * n - 4 * r + 1);
    let to = Basis::new(Family::CSigmaLam, n);
    OperatorMatrix::from_columns(from, to, |l| {
        ValExpr::basis_element(to, Label::Pair(2 * r + l.degree(), r))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaceform::tube::{tube_complex, tube_real_hyper};

    #[test]
    fn g_commutes_with_tube() {
        for n in 1..=3 {
            for j in 1..=2 {
                let g = map_g(n, j).to_trig();
                let lhs = tube_complex(n + 2 * j).compose(&g).unwrap();
                let rhs = g.compose(&tube_complex(n)).unwrap();
                assert_eq!(lhs, rhs, "n = {n}, j = {j}");
            }
        }
    }

    #[test]
    fn f_commutes_with_tube() {
        for n in 1..=4 {
            for r in 0..=n / 2 {
                let f = map_f(n, r).unwrap().to_trig();
                let lhs = tube_complex(n).compose(&f).unwrap();
                let rhs = f.compose(&tube_real_hyper(2 * n - 4 * r + 1).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "n = {n}, r = {r}");
            }
        }
    }
}

//! Eigenvalues and eigenvectors of ∂ over ℚ(λ, π̂)(ρ), ρ² = −λ.

use crate::algebra::{linalg, Basis, Family, OperatorMatrix, ValExpr};
use crate::error::Result;
use crate::scalar::{Ring, RhoScalar};
use crate::sl2::eigenbasis_ylambda;

use super::bases;
use super::derivative::{derivative_complex, derivative_real_sigma};

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenspace {
    pub value: RhoScalar,
    pub vectors: Vec<ValExpr<RhoScalar>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralReport {
    pub basis: Basis,
    /// Ordered by the rational multiple of ρ.
    pub eigenspaces: Vec<Eigenspace>,
    pub dim_ker: usize,
    pub dim_ker2: usize,
}

impl SpectralReport {
    pub fn multiplicity(&self, value: &RhoScalar) -> usize {
        self.eigenspaces
            .iter()
            .find(|e| &e.value == value)
            .map_or(0, |e| e.vectors.len())
    }

    /// True iff every listed vector is an eigenvector of `op`.
    pub fn check(&self, op: &OperatorMatrix) -> Result<bool> {
        let lifted = op.map(|x| RhoScalar::from_scalar(x.clone()));
        for e in &self.eigenspaces {
            for v in &e.vectors {
                if lifted.apply(v)? != v.scale(&e.value) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn insert(spaces: &mut Vec<Eigenspace>, value: RhoScalar, v: ValExpr<RhoScalar>) {
    match spaces.iter_mut().find(|e| e.value == value) {
        Some(e) => e.vectors.push(v),
        None => spaces.push(Eigenspace { value, vectors: vec![v] }),
    }
}

fn sort(spaces: &mut [Eigenspace]) {
    spaces.sort_by(|a, b| {
        let key = |e: &Eigenspace| e.value.rho.as_rational().expect("rational multiple of ρ");
        key(a).cmp(&key(b))
    });
}

/// Spectrum of ∂ on C-SigmaLam(n): J(e₁^k e₂^{m−k}) with eigenvalue (2k−m)ρ on each component.
pub fn spectrum_complex(n: u32) -> Result<SpectralReport> {
    let mut spaces = Vec::new();
    for r in 0..=n / 2 {
        for (val, p) in eigenbasis_ylambda(2 * n - 4 * r) {
            insert(&mut spaces, val, bases::j_complex(n, r, &p)?);
        }
    }
    sort(&mut spaces);
    let op = derivative_complex(n, Family::CSigmaLam)?;
    let dim = op.domain().dim();
    Ok(SpectralReport {
        basis: op.domain(),
        eigenspaces: spaces,
        dim_ker: dim - linalg::rank(&op),
        dim_ker2: dim - linalg::rank(&op.pow(2)?),
    })
}

/// Spectrum of ∂ on R-Sigma(d): the hyperplane eigenvectors J(e₁^k e₂^{d−1−k}) plus,
/// for even d, the Euler characteristic spanning the kernel.
pub fn spectrum_real(d: u32) -> Result<SpectralReport> {
    let mut spaces = Vec::new();
    for (val, p) in eigenbasis_ylambda(d - 1) {
        insert(&mut spaces, val, bases::j_real(d, &p)?);
    }
    let op = derivative_real_sigma(d);
    if d.is_multiple_of(2) {
        let chi = super::kernel::euler_real(d).map(|x| RhoScalar::from_scalar(x.clone()));
        insert(&mut spaces, RhoScalar::zero(), chi);
    }
    sort(&mut spaces);
    let dim = op.domain().dim();
    Ok(SpectralReport {
        basis: op.domain(),
        eigenspaces: spaces,
        dim_ker: dim - linalg::rank(&op),
        dim_ker2: dim - linalg::rank(&op.pow(2)?),
    })
}

//! Invariant valuations on flat space: Val^{O(m)} and Val^{U(n)}.
//!
//! Operator formulas may produce labels outside a basis; those terms are
//! dropped. The one exception is τ_{k,q} with q < k − n, which is not a basis
//! label but still a nonzero valuation (its defining μ-sum just starts at
//! i = k − n); [`tau_ext`] expands such symbols.

use crate::algebra::{Basis, Family, Label, OperatorMatrix, ValExpr};
use crate::error::{Error, Result};
use crate::scalar::{
    binomial_s, double_factorial_s, factorial_s, omega, Ring, Scalar, TrigPoly,
};

fn unsupported(b: Basis, what: &str) -> Error {
    Error::UnsupportedBasis(format!("{what} is not available on {b}"))
}

fn int(k: i64) -> Scalar {
    Scalar::from_int(k)
}

fn need_unitary(b: Basis) -> Result<()> {
    match b.family {
        Family::UMu | Family::UTau | Family::UPi | Family::USigma => Ok(()),
        _ => Err(unsupported(b, "a unitary change of basis")),
    }
}

/// τ_{k,q} = Σ_{i ≥ q} C(i,q) μ_{k,i} over valid μ labels, for any q ≥ 0.
pub fn tau_ext_in_mu(n: u32, k: i64, q: i64) -> ValExpr {
    let b = Basis::new(Family::UMu, n);
    let mut out = ValExpr::zero(b);
    if k < 0 || q < 0 || k > 2 * n as i64 || 2 * q > k {
        return out;
    }
    let lo = q.max(k - n as i64);
    for i in lo..=k / 2 {
        out.add_coerced(Label::Pair(k as u32, i as u32), binomial_s(i, q));
    }
    out
}

/// τ_{k,q} for any integer indices, in the τ basis.
pub fn tau_ext(n: u32, k: i64, q: i64) -> ValExpr {
    let b = Basis::new(Family::UTau, n);
    if k >= 0 && q >= 0 && b.contains(&Label::Pair(k as u32, q as u32)) {
        return ValExpr::basis_element(b, Label::Pair(k as u32, q as u32)).expect("valid label");
    }
    mu_to_tau(&tau_ext_in_mu(n, k, q)).expect("U-Mu input")
}

fn l_column(b: Basis, l: Label) -> Result<ValExpr> {
    let mut out = ValExpr::zero(b);
    match (b.family, l) {
        (Family::OMu, Label::Single(k)) => {
            out.add_coerced(Label::Single(k + 1), int(k as i64 + 1));
        }
        (Family::UMu, Label::Pair(k, q)) => {
            out.add_coerced(Label::Pair(k + 1, q), int(k as i64 - 2 * q as i64 + 1));
            out.add_coerced(Label::Pair(k + 1, q + 1), int(2 * (q as i64 + 1)));
        }
        (Family::UTau, Label::Pair(k, q)) => {
            let c = int(k as i64 - 2 * q as i64 + 1);
            out.axpy(&c, &tau_ext(b.ambient, k as i64 + 1, q as i64))?;
        }
        _ => return Err(unsupported(b, "L")),
    }
    Ok(out)
}

fn lambda_column(b: Basis, l: Label) -> Result<ValExpr> {
    let mut out = ValExpr::zero(b);
    let n = b.ambient as i64;
    match (b.family, l) {
        (Family::OMu, Label::Single(k)) => {
            if k > 0 {
                out.add_coerced(Label::Single(k - 1), int(n - k as i64 + 1));
            }
        }
        (Family::UMu, Label::Pair(k, q)) => {
            let (k, q) = (k as i64, q as i64);
            if k > 0 && q > 0 {
                out.add_coerced(Label::Pair(k as u32 - 1, q as u32 - 1), int(k - 2 * q + 1));
            }
            if k > 0 {
                out.add_coerced(Label::Pair(k as u32 - 1, q as u32), int(2 * (n - k + q + 1)));
            }
        }
        (Family::UTau, Label::Pair(k, q)) => {
            let (k, q) = (k as i64, q as i64);
            if k > 0 && q > 0 {
                out.axpy(&int(k - 2 * q + 1), &tau_ext(b.ambient, k - 1, q - 1))?;
            }
            if k > 0 {
                out.axpy(&int(2 * n - 2 * q - k + 1), &tau_ext(b.ambient, k - 1, q))?;
            }
        }
        _ => return Err(unsupported(b, "Λ")),
    }
    Ok(out)
}

fn h_column(b: Basis, l: Label) -> Result<ValExpr> {
    let top = match b.family {
        Family::OMu => b.ambient as i64,
        Family::UMu | Family::UTau => 2 * b.ambient as i64,
        _ => return Err(unsupported(b, "H")),
    };
    let mut out = ValExpr::zero(b);
    out.add_term(l, int(2 * l.degree() as i64 - top))?;
    Ok(out)
}

pub fn l_matrix(b: Basis) -> Result<OperatorMatrix> {
    OperatorMatrix::from_columns(b, b, |l| l_column(b, l))
}

pub fn lambda_matrix(b: Basis) -> Result<OperatorMatrix> {
    OperatorMatrix::from_columns(b, b, |l| lambda_column(b, l))
}

pub fn h_matrix(b: Basis) -> Result<OperatorMatrix> {
    OperatorMatrix::from_columns(b, b, |l| h_column(b, l))
}

pub fn op_l(v: &ValExpr) -> Result<ValExpr> {
    l_matrix(v.basis())?.apply(v)
}

pub fn op_lambda(v: &ValExpr) -> Result<ValExpr> {
    lambda_matrix(v.basis())?.apply(v)
}

pub fn op_h(v: &ValExpr) -> Result<ValExpr> {
    h_matrix(v.basis())?.apply(v)
}

/// τ-coordinates → μ-coordinates.
pub fn tau_to_mu_matrix(n: u32) -> OperatorMatrix {
    let tb = Basis::new(Family::UTau, n);
    let mb = Basis::new(Family::UMu, n);
    OperatorMatrix::from_columns(tb, mb, |l| {
        let (k, q) = (l.degree() as i64, l.second().expect("pair") as i64);
        Ok(tau_ext_in_mu(n, k, q))
    })
    .expect("columns live in U-Mu")
}

/// μ-coordinates → τ-coordinates, by back-substitution over q from the top.
pub fn mu_to_tau_matrix(n: u32) -> OperatorMatrix {
    let tb = Basis::new(Family::UTau, n);
    let mb = Basis::new(Family::UMu, n);
    let mut m = OperatorMatrix::zero(mb, tb);
    for k in 0..=2 * n {
        let lo = k.saturating_sub(n);
        let hi = k / 2;
        // μ_{k,q} = τ_{k,q} − Σ_{i>q} C(i,q) μ_{k,i}
        let mut rows: Vec<ValExpr> = Vec::new();
        for q in (lo..=hi).rev() {
            let mut e = ValExpr::basis_element(tb, Label::Pair(k, q)).expect("valid");
            for (idx, i) in ((q + 1)..=hi).enumerate() {
                let prev = &rows[rows.len() - 1 - idx];
                e.axpy(&-binomial_s(i as i64, q as i64), prev).expect("same basis");
            }
            rows.push(e);
        }
        for (e, q) in rows.iter().zip((lo..=hi).rev()) {
            for (r, c) in e.terms() {
                m.add_entry(*r, Label::Pair(k, q), c.clone()).expect("valid");
            }
        }
    }
    m
}

pub fn mu_to_tau(v: &ValExpr) -> Result<ValExpr> {
    if v.basis().family != Family::UMu {
        return Err(unsupported(v.basis(), "μ → τ conversion"));
    }
    mu_to_tau_matrix(v.basis().ambient).apply(v)
}

pub fn tau_to_mu(v: &ValExpr) -> Result<ValExpr> {
    if v.basis().family != Family::UTau {
        return Err(unsupported(v.basis(), "τ → μ conversion"));
    }
    tau_to_mu_matrix(v.basis().ambient).apply(v)
}

/// π_{k,r} in τ-coordinates.
pub fn pi_in_tau(n: u32, k: u32, r: u32) -> ValExpr {
    let (ni, ki, ri) = (n as i64, k as i64, r as i64);
    let sign = if r.is_multiple_of(2) { int(1) } else { int(-1) };
    let lead = sign * double_factorial_s(2 * ni - 4 * ri + 1);
    let mut out = ValExpr::zero(Basis::new(Family::UTau, n));
    for i in 0..=ri {
        let si = if i % 2 == 0 { int(1) } else { int(-1) };
        let c = &lead
            * &si
            * factorial_s((ki - 2 * i) as u32)
            * double_factorial_s(2 * ri - 2 * i - 1)
            / (factorial_s((2 * ri - 2 * i) as u32) * double_factorial_s(2 * ni - 2 * ri - 2 * i + 1));
        out.axpy(&c, &tau_ext(n, ki, i)).expect("same basis");
    }
    out
}

/// π-coordinates → τ-coordinates.
pub fn pi_to_tau_matrix(n: u32) -> OperatorMatrix {
    let pb = Basis::new(Family::UPi, n);
    let tb = Basis::new(Family::UTau, n);
    OperatorMatrix::from_columns(pb, tb, |l| {
        Ok(pi_in_tau(n, l.degree(), l.second().expect("pair")))
    })
    .expect("columns live in U-Tau")
}

/// τ-coordinates → π-coordinates (the Lefschetz decomposition).
pub fn tau_to_pi_matrix(n: u32) -> OperatorMatrix {
    let pb = Basis::new(Family::UPi, n);
    let tb = Basis::new(Family::UTau, n);
    OperatorMatrix::from_columns(tb, pb, |l| {
        let (k, r) = (l.degree() as i64, l.second().expect("pair") as i64);
        let ni = n as i64;
        let mut out = ValExpr::zero(pb);
        for i in 0..=r {
            if 2 * i > ni || r + i > ni {
                continue;
            }
            let c = binomial_s(ni - 2 * i, r - i) * factorial_s((2 * ni - 2 * i - 2 * r) as u32)
                / (factorial_s((2 * ni - 4 * i) as u32) * factorial_s((k - 2 * r) as u32));
            out.add_coerced(Label::Pair(k as u32, i as u32), c);
        }
        Ok(out)
    })
    .expect("columns live in U-Pi")
}

/// σ_{k,r} = ω_{2n−k}/(k−2r)! · π_{k,r}, as the σ → π coordinate map.
pub fn sigma_to_pi_matrix(n: u32) -> OperatorMatrix {
    let sb = Basis::new(Family::USigma, n);
    let pb = Basis::new(Family::UPi, n);
    OperatorMatrix::from_columns(sb, pb, |l| {
        let (k, r) = (l.degree(), l.second().expect("pair"));
        ValExpr::from_terms(pb, [(l, sigma_pi_factor(n, k, r))])
    })
    .expect("diagonal")
}

pub fn pi_to_sigma_matrix(n: u32) -> OperatorMatrix {
    let sb = Basis::new(Family::USigma, n);
    let pb = Basis::new(Family::UPi, n);
    OperatorMatrix::from_columns(pb, sb, |l| {
        let (k, r) = (l.degree(), l.second().expect("pair"));
        let f = sigma_pi_factor(n, k, r).inv().expect("nonzero");
        ValExpr::from_terms(sb, [(l, f)])
    })
    .expect("diagonal")
}

/// ω_{2n−k}/(k−2r)!.
pub fn sigma_pi_factor(n: u32, k: u32, r: u32) -> Scalar {
    omega(2 * n - k) / factorial_s(k - 2 * r)
}

/// Coordinate change between two unitary families of the same n.
pub fn unitary_change(n: u32, from: Family, to: Family) -> Result<OperatorMatrix> {
    let rank = |f: Family| match f {
        Family::UMu => Ok(0),
        Family::UTau => Ok(1),
        Family::UPi => Ok(2),
        Family::USigma => Ok(3),
        _ => Err(unsupported(Basis::new(f, n), "a unitary change of basis")),
    };
    let (a, b) = (rank(from)?, rank(to)?);
    let up = [mu_to_tau_matrix(n), tau_to_pi_matrix(n), pi_to_sigma_matrix(n)];
    let down = [tau_to_mu_matrix(n), pi_to_tau_matrix(n), sigma_to_pi_matrix(n)];
    let mut m = OperatorMatrix::identity(Basis::new(from, n));
    if a < b {
        for step in &up[a..b] {
            m = step.compose(&m)?;
        }
    } else {
        for step in down[b..a].iter().rev() {
            m = step.compose(&m)?;
        }
    }
    Ok(m)
}

pub fn convert(v: &ValExpr, to: Family) -> Result<ValExpr> {
    need_unitary(v.basis())?;
    unitary_change(v.basis().ambient, v.basis().family, to)?.apply(v)
}

/// Conjugates an operator given on the τ basis to another unitary family.
pub fn conjugate_from_tau(m: &OperatorMatrix, to: Family) -> Result<OperatorMatrix> {
    let n = m.domain().ambient;
    let into = unitary_change(n, Family::UTau, to)?;
    let back = unitary_change(n, to, Family::UTau)?;
    into.compose(&m.compose(&back)?)
}

/// True iff Λπ_{2r,r} = 0, computed through the τ action.
pub fn primitivity_check(n: u32, r: u32) -> Result<bool> {
    if 2 * r > n {
        return Err(Error::IndexOutOfRange(format!("need 2r <= n, got n = {n}, r = {r}")));
    }
    Ok(op_lambda(&pi_in_tau(n, 2 * r, r))?.is_zero())
}

/// Λ^i π_{k,r} = (k−2r)!(2n−k−2r+i)! / ((k−2r−i)!(2n−k−2r)!) · π_{k−i,r}.
pub fn lambda_on_pi(n: u32, k: u32, r: u32, i: u32) -> Result<ValExpr> {
    let b = Basis::new(Family::UPi, n);
    b.check(&Label::Pair(k, r))?;
    if 2 * r + i > k {
        return Err(Error::IndexOutOfRange(format!(
            "Λ^{i} π_({k},{r}) needs 2r <= k - i"
        )));
    }
    let top = k - 2 * r;
    let c = factorial_s(top) * factorial_s(2 * n - k - 2 * r + i)
        / (factorial_s(top - i) * factorial_s(2 * n - k - 2 * r));
    ValExpr::from_terms(b, [(Label::Pair(k - i, r), c)])
}

/// The flat derivative ∂ = (ω_{m−k+1}/ω_{m−k}) Λ on degree k, for O-Mu or U-Mu.
pub fn flat_derivative_matrix(b: Basis) -> Result<OperatorMatrix> {
    let top = match b.family {
        Family::OMu => b.ambient,
        Family::UMu | Family::UTau => 2 * b.ambient,
        _ => return Err(unsupported(b, "the flat derivative")),
    };
    let lam = lambda_matrix(b)?;
    OperatorMatrix::from_columns(b, b, |l| {
        let k = l.degree();
        Ok(lam.column(&l).scale_scalar(&(omega(top - k + 1) / omega(top - k))))
    })
}

/// T_t π_{k,r} with coefficients polynomial in t.
pub fn tube_flat_pi(n: u32, k: u32, r: u32) -> Result<ValExpr<TrigPoly>> {
    let b = Basis::new(Family::UPi, n);
    b.check(&Label::Pair(k, r))?;
    let mut out = ValExpr::zero(b);
    let pre = factorial_s(k - 2 * r) / omega(2 * n - k);
    for j in 0..=(k - 2 * r) {
        let c = &pre
            * &binomial_s((2 * n - 4 * r - j) as i64, (k - 2 * r - j) as i64)
            * omega(2 * n - 2 * r - j)
            / factorial_s(j);
        out.add_term(Label::Pair(j + 2 * r, r), TrigPoly::term(c, 0, 0, k - 2 * r - j))?;
    }
    Ok(out)
}

pub fn tube_flat_pi_matrix(n: u32) -> OperatorMatrix<TrigPoly> {
    let b = Basis::new(Family::UPi, n);
    OperatorMatrix::from_columns(b, b, |l| {
        tube_flat_pi(n, l.degree(), l.second().expect("pair"))
    })
    .expect("valid labels")
}

/// T_t μ_k = Σ_j C(m−j, k−j) (ω_{m−j}/ω_{m−k}) t^{k−j} μ_j on Val^{O(m)}.
pub fn tube_flat_intrinsic(m: u32, k: u32) -> Result<ValExpr<TrigPoly>> {
    let b = Basis::new(Family::OMu, m);
    b.check(&Label::Single(k))?;
    let mut out = ValExpr::zero(b);
    for j in 0..=k {
        let c = binomial_s((m - j) as i64, (k - j) as i64) * omega(m - j) / omega(m - k);
        out.add_term(Label::Single(j), TrigPoly::term(c, 0, 0, k - j))?;
    }
    Ok(out)
}

pub fn tube_flat_intrinsic_matrix(m: u32) -> OperatorMatrix<TrigPoly> {
    let b = Basis::new(Family::OMu, m);
    OperatorMatrix::from_columns(b, b, |l| tube_flat_intrinsic(m, l.degree())).expect("valid labels")
}

/// Evaluates a polynomial-in-t matrix at a rational t.
pub fn eval_t_matrix(
    m: &OperatorMatrix<TrigPoly>,
    t: &num_rational::BigRational,
) -> Result<OperatorMatrix> {
    m.try_map(|p| p.eval_t(t))
}

/// Commutator `a∘b − b∘a`.
pub fn commutator<K: Ring>(a: &OperatorMatrix<K>, b: &OperatorMatrix<K>) -> Result<OperatorMatrix<K>> {
    a.compose(b)?.sub(&b.compose(a)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn mu(n: u32, k: u32, q: u32) -> ValExpr {
        ValExpr::basis_element(Basis::new(Family::UMu, n), Label::Pair(k, q)).unwrap()
    }

    fn tau(n: u32, k: u32, q: u32) -> ValExpr {
        ValExpr::basis_element(Basis::new(Family::UTau, n), Label::Pair(k, q)).unwrap()
    }

    #[test]
    fn orthogonal_lambda() {
        let b = Basis::new(Family::OMu, 5);
        let v = ValExpr::basis_element(b, Label::Single(3)).unwrap();
        let expect = ValExpr::from_terms(b, [(Label::Single(2), int(3))]).unwrap();
        assert_eq!(op_lambda(&v).unwrap(), expect);
    }

    #[test]
    fn unitary_examples() {
        let got = op_lambda(&mu(3, 3, 1)).unwrap();
        let expect = mu(3, 2, 0).scale(&int(2)).add(&mu(3, 2, 1).scale(&int(4))).unwrap();
        assert_eq!(got, expect);
        let got = op_l(&mu(2, 1, 0)).unwrap();
        let expect = mu(2, 2, 0).scale(&int(2)).add(&mu(2, 2, 1).scale(&int(2))).unwrap();
        assert_eq!(got, expect);
        let pb = Basis::new(Family::UPi, 2);
        assert!(matches!(
            op_l(&ValExpr::zero(pb)),
            Err(Error::UnsupportedBasis(_))
        ));
    }

    #[test]
    fn tasaki_examples() {
        assert_eq!(tau_to_mu(&tau(2, 2, 0)).unwrap(), mu(2, 2, 0).add(&mu(2, 2, 1)).unwrap());
        assert_eq!(tau_to_mu(&tau(2, 2, 1)).unwrap(), mu(2, 2, 1));
        assert_eq!(mu_to_tau(&mu(2, 2, 0)).unwrap(), tau(2, 2, 0).sub(&tau(2, 2, 1)).unwrap());
    }

    #[test]
    fn back_substitution_matches_binomial_inversion() {
        for n in 1..7 {
            let m = mu_to_tau_matrix(n);
            for l in Basis::new(Family::UMu, n).labels() {
                let (k, q) = (l.degree(), l.second().unwrap());
                let mut expect = ValExpr::zero(Basis::new(Family::UTau, n));
                for i in q..=k / 2 {
                    let sign = if (i - q) % 2 == 0 { int(1) } else { int(-1) };
                    expect.add_coerced(Label::Pair(k, i), sign * binomial_s(i as i64, q as i64));
                }
                assert_eq!(m.column(&l), expect, "n = {n}, {l}");
            }
        }
    }

    #[test]
    fn tau_operators_agree_with_mu_route() {
        for n in 1..6 {
            let (tb, mb) = (Basis::new(Family::UTau, n), Basis::new(Family::UMu, n));
            let (fwd, back) = (tau_to_mu_matrix(n), mu_to_tau_matrix(n));
            for op in [l_matrix, lambda_matrix] {
                let direct = op(tb).unwrap();
                let routed = back.compose(&op(mb).unwrap().compose(&fwd).unwrap()).unwrap();
                assert_eq!(direct, routed, "n = {n}");
            }
        }
    }

    #[test]
    fn pi_examples() {
        for n in 1..5 {
            let p00 = pi_in_tau(n, 0, 0);
            assert_eq!(p00, tau(n, 0, 0));
            let m = tau_to_pi_matrix(n);
            for k in 0..=n {
                let col = m.column(&Label::Pair(k, 0));
                assert_eq!(col.coeff(&Label::Pair(k, 0)), factorial_s(k).inv().unwrap());
            }
        }
        let n = 3;
        let rt = pi_to_tau_matrix(n).compose(&tau_to_pi_matrix(n)).unwrap();
        assert_eq!(rt.column(&Label::Pair(4, 1)), tau(3, 4, 1));
        // n = 1: τ_{2,0} is the symbol Σ_{i≥0} μ_{2,i} = μ_{2,1}.
        assert_eq!(
            tau_to_mu(&pi_in_tau(1, 2, 0)).unwrap(),
            mu(1, 2, 1).scale(&int(2))
        );
    }

    #[test]
    fn lambda_powers_on_pi() {
        let got = lambda_on_pi(2, 2, 0, 1).unwrap();
        let pb = Basis::new(Family::UPi, 2);
        assert_eq!(got, ValExpr::from_terms(pb, [(Label::Pair(1, 0), int(6))]).unwrap());
        let same = lambda_on_pi(2, 3, 0, 0).unwrap();
        assert_eq!(same, ValExpr::basis_element(pb, Label::Pair(3, 0)).unwrap());
        assert!(lambda_on_pi(2, 2, 1, 1).is_err());
    }

    #[test]
    fn flat_tube_examples() {
        let t = tube_flat_pi(1, 1, 0).unwrap();
        assert_eq!(t.coeff(&Label::Pair(0, 0)), TrigPoly::term(Scalar::pi(), 0, 0, 1));
        assert_eq!(t.coeff(&Label::Pair(1, 0)), TrigPoly::one());
        let v = tube_flat_intrinsic(2, 2).unwrap();
        assert_eq!(v.coeff(&Label::Single(0)), TrigPoly::term(Scalar::pi(), 0, 0, 2));
        assert_eq!(v.coeff(&Label::Single(1)), TrigPoly::term(int(2), 0, 0, 1));
        assert_eq!(v.coeff(&Label::Single(2)), TrigPoly::one());
        let z = tube_flat_intrinsic(4, 0).unwrap();
        assert_eq!(z.terms().len(), 1);
    }

    #[test]
    fn flat_tubes_solve_the_cauchy_problem() {
        for m in 1..7 {
            let b = Basis::new(Family::OMu, m);
            let t = tube_flat_intrinsic_matrix(m);
            let d = flat_derivative_matrix(b).unwrap().to_trig();
            assert_eq!(t.derivative(), d.compose(&t).unwrap(), "m = {m}");
        }
        for n in 1..4 {
            let t = tube_flat_pi_matrix(n);
            let d = flat_derivative_matrix(Basis::new(Family::UTau, n)).unwrap();
            let d = conjugate_from_tau(&d, Family::UPi).unwrap().to_trig();
            assert_eq!(t.derivative(), d.compose(&t).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn eval_matrix_at_zero_is_identity() {
        let t = tube_flat_pi_matrix(2);
        let z = eval_t_matrix(&t, &BigRational::from_integer(0.into())).unwrap();
        assert_eq!(z, OperatorMatrix::identity(t.domain()));
    }
}

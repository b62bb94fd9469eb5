//! The named invariant suite behind `valtube verify`.
//!
//! Every check compares two independent constructions exactly, except the
//! semigroup check which evaluates at high precision.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::{linalg, Basis, Family, Label, OperatorMatrix, ValExpr};
use crate::flat;
use crate::scalar::numeric::{below_exp10, NumCtx};
use crate::scalar::{
    binomial_s, double_factorial_s, omega, Ring, RhoScalar, Scalar, TrigPoly,
};
use crate::sl2::{self, HomogPoly};
use crate::spaceform::{bases, derivative as der, kernel, spectral, structure, tube};

/// Digits carried by the semigroup check.
pub const SEMIGROUP_DIGITS: usize = 40;
/// The semigroup defect must stay below 10^(−SEMIGROUP_TOL_EXP10).
pub const SEMIGROUP_TOL_EXP10: u32 = 25;
pub const SEMIGROUP_PAIRS: usize = 50;
pub const SEED: u64 = 0x7a11_5eed;

pub type Outcome = std::result::Result<(), String>;

pub struct Check {
    pub name: &'static str,
    /// Acceptance criterion this check belongs to.
    pub criterion: u8,
    pub run: fn() -> Outcome,
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn checks() -> Vec<Check> {
    vec![
        Check { name: "derivative-oracle", criterion: 1, run: derivative_oracle },
        Check { name: "model-flow", criterion: 2, run: model_flow },
        Check { name: "tube-cauchy", criterion: 3, run: tube_cauchy },
        Check { name: "tube-initial", criterion: 3, run: tube_initial },
        Check { name: "flat-limit-complex", criterion: 4, run: flat_limit_complex },
        Check { name: "flat-limit-real", criterion: 4, run: flat_limit_real },
        Check { name: "volume-rows", criterion: 5, run: volume_rows },
        Check { name: "sl2-relations", criterion: 6, run: sl2_relations },
        Check { name: "basis-roundtrips", criterion: 6, run: basis_roundtrips },
        Check { name: "lefschetz", criterion: 6, run: lefschetz },
        Check { name: "model-kernel", criterion: 7, run: model_kernel },
        Check { name: "stable-and-euler", criterion: 7, run: stable_and_euler },
        Check { name: "preimage-complex", criterion: 7, run: preimage_complex },
        Check { name: "crofton", criterion: 7, run: crofton },
        Check { name: "spectrum-complex", criterion: 8, run: spectrum_complex },
        Check { name: "spectrum-real", criterion: 8, run: spectrum_real },
        Check { name: "semigroup", criterion: 9, run: semigroup },
        Check { name: "structure-maps", criterion: 10, run: structure_maps },
        Check { name: "json-roundtrip", criterion: 11, run: json_roundtrip },
    ]
}

/// Runs every check (or those whose name contains `filter`) in parallel.
pub fn run(filter: Option<&str>) -> Vec<(&'static str, u8, Outcome)> {
    let selected: Vec<Check> = checks()
        .into_iter()
        .filter(|c| filter.is_none_or(|f| c.name.contains(f)))
        .collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = selected
            .iter()
            .map(|c| (c.name, c.criterion, s.spawn(c.run)))
            .collect();
        handles
            .into_iter()
            .map(|(n, k, h)| {
                let out = h.join().unwrap_or_else(|_| Err("check panicked".into()));
                (n, k, out)
            })
            .collect()
    })
}

fn derivative_oracle() -> Outcome {
    for n in 1..=5 {
        let a = der::complex_direct(n);
        let b = der::complex_intertwined(n).map_err(err)?;
        ensure(a == b, || format!("direct and intertwined differ at n = {n}"))?;
    }
    Ok(())
}

fn model_flow() -> Outcome {
    for m in 0..=10 {
        for k in 0..=m {
            let p = sl2::exp_t_ylambda(k, m).map_err(err)?;
            for j in 0..=m {
                let want = sl2::phi_coeff(m, k, j).scale(&binomial_s(m as i64, j as i64));
                ensure(p.coeff(j) == want, || format!("coefficient m={m} k={k} j={j}"))?;
            }
            ensure(p.derivative() == p.op_ylambda(), || {
                format!("d/dt differs from Y_lambda at m = {m}, k = {k}")
            })?;
        }
    }
    Ok(())
}

fn tube_cauchy() -> Outcome {
    for n in 1..=4 {
        let t = tube::tube_complex(n);
        let d = der::derivative_complex(n, Family::CSigmaLam).map_err(err)?.to_trig();
        ensure(t.derivative() == d.compose(&t).map_err(err)?, || {
            format!("complex n = {n}")
        })?;
    }
    for d in 1..=8 {
        let t = tube::tube_real(d).map_err(err)?;
        let dm = der::derivative_real_sigma(d).to_trig();
        ensure(t.derivative() == dm.compose(&t).map_err(err)?, || format!("real d = {d}"))?;
    }
    Ok(())
}

fn tube_initial() -> Outcome {
    for n in 1..=4 {
        let t = tube::tube_complex(n);
        ensure(t.at_zero() == OperatorMatrix::identity(t.domain()), || {
            format!("T_0 != id, complex n = {n}")
        })?;
    }
    for d in 1..=8 {
        let t = tube::tube_real(d).map_err(err)?;
        ensure(t.at_zero() == OperatorMatrix::identity(t.domain()), || {
            format!("T_0 != id, real d = {d}")
        })?;
    }
    Ok(())
}

fn flat_limit_complex() -> Outcome {
    for n in 1..=4 {
        let curved = tube::tube(Basis::new(Family::CPiLam, n)).map_err(err)?;
        let fb = Basis::new(Family::UPi, n);
        let at0 = curved
            .try_map(|p| p.specialize_flat())
            .map_err(err)?
            .rebase(fb, fb)
            .map_err(err)?;
        ensure(at0 == flat::tube_flat_pi_matrix(n), || {
            format!("pi-basis flat limit differs at n = {n}")
        })?;
    }
    Ok(())
}

/// σ_i ↦ w_i μ_i; a diagonal relabeling between R-Sigma(d) and O-Mu(m).
fn diag_to_omu(d: u32, m: u32, w: impl Fn(u32) -> Scalar) -> OperatorMatrix<TrigPoly> {
    let (rb, ob) = (Basis::new(Family::RSigma, d), Basis::new(Family::OMu, m));
    let mut out = OperatorMatrix::zero(rb, ob);
    for i in 0..=m.min(d) {
        out.add_entry(Label::Single(i), Label::Single(i), TrigPoly::constant(w(i)))
            .expect("labels in range");
    }
    out
}

fn flat_limit_real() -> Outcome {
    for d in 1..=8 {
        let t0 = tube::tube_real_flat(d).map_err(err)?;
        // Hyperplane rows against O(d−1) through Ψ_0, up to μ_k ↦ σ_k / ω_{d−1−k}.
        let m = d - 1;
        let psi = bases::psi_matrix(m).to_trig();
        let steiner = flat::tube_flat_intrinsic_matrix(m);
        let undo: OperatorMatrix<TrigPoly> = {
            let ob = Basis::new(Family::OMu, m);
            let mut u = OperatorMatrix::zero(ob, ob);
            for k in 0..=m {
                u.add_entry(
                    Label::Single(k),
                    Label::Single(k),
                    TrigPoly::constant(omega(m - k).inv().expect("nonzero")),
                )
                .map_err(err)?;
            }
            u
        };
        let embed = psi.compose(&undo).map_err(err)?;
        let lhs = embed.compose(&steiner).map_err(err)?;
        let rhs = t0.compose(&embed).map_err(err)?;
        ensure(lhs == rhs, || format!("hyperplane flat limit differs at d = {d}"))?;
        // Full space against O(d) with σ_i ↦ (d−i)ω_{d−i} μ_i and σ_d ↦ μ_d.
        let full = diag_to_omu(d, d, |i| {
            if i < d {
                Scalar::from_int((d - i) as i64) * omega(d - i)
            } else {
                Scalar::one()
            }
        });
        let lhs = full.compose(&t0).map_err(err)?;
        let rhs = flat::tube_flat_intrinsic_matrix(d).compose(&full).map_err(err)?;
        ensure(lhs == rhs, || format!("volume-inclusive flat limit differs at d = {d}"))?;
    }
    Ok(())
}

fn volume_rows() -> Outcome {
    let (s, c) = (TrigPoly::s(), TrigPoly::c());
    for n in 1..=4 {
        let b = Basis::new(Family::CSigmaLam, n);
        let col = tube::tube_complex(n).column(&Label::Pair(2 * n, 0));
        let mut want = ValExpr::zero(b);
        for j in 0..=2 * n {
            want.add_term(Label::Pair(j, 0), s.pow(2 * n - j).mul(&c.pow(j)))
                .map_err(err)?;
        }
        ensure(col == want, || format!("complex volume column at n = {n}"))?;
    }
    for d in 1..=8 {
        let b = Basis::new(Family::RSigma, d);
        let t = tube::tube_real(d).map_err(err)?;
        let mut want = ValExpr::zero(b);
        for j in 0..d {
            want.add_term(Label::Single(j), s.pow(d - 1 - j).mul(&c.pow(j)))
                .map_err(err)?;
        }
        ensure(t.column(&Label::Single(d - 1)) == want, || {
            format!("real area column at d = {d}")
        })?;
        // The volume column integrates the area column.
        let vol = t.column(&Label::Single(d));
        for j in 0..d {
            let got = vol.coeff(&Label::Single(j));
            ensure(
                got.derivative() == want.coeff(&Label::Single(j)) && got.at_zero().is_zero(),
                || format!("real volume column at d = {d}, j = {j}"),
            )?;
        }
    }
    Ok(())
}

fn sl2_relations() -> Outcome {
    let mut bases_list = vec![];
    for n in 1..=5 {
        bases_list.push(Basis::new(Family::UMu, n));
        bases_list.push(Basis::new(Family::UTau, n));
    }
    for m in 1..=8 {
        bases_list.push(Basis::new(Family::OMu, m));
    }
    for b in bases_list {
        let l = flat::l_matrix(b).map_err(err)?;
        let lam = flat::lambda_matrix(b).map_err(err)?;
        let h = flat::h_matrix(b).map_err(err)?;
        let two = Scalar::from_int(2);
        ensure(flat::commutator(&l, &lam).map_err(err)? == h, || format!("[L,Λ] != H on {b}"))?;
        ensure(flat::commutator(&h, &l).map_err(err)? == l.scale(&two), || {
            format!("[H,L] != 2L on {b}")
        })?;
        ensure(
            flat::commutator(&h, &lam).map_err(err)? == lam.scale(&-two),
            || format!("[H,Λ] != -2Λ on {b}"),
        )?;
    }
    Ok(())
}

fn basis_roundtrips() -> Outcome {
    let fams = [Family::UMu, Family::UTau, Family::UPi, Family::USigma];
    for n in 1..=5 {
        for &a in &fams {
            for &b in &fams {
                let there = flat::unitary_change(n, a, b).map_err(err)?;
                let back = flat::unitary_change(n, b, a).map_err(err)?;
                ensure(
                    back.compose(&there).map_err(err)? == OperatorMatrix::identity(Basis::new(a, n)),
                    || format!("{a} -> {b} -> {a} is not the identity for n = {n}"),
                )?;
            }
        }
    }
    Ok(())
}

fn lefschetz() -> Outcome {
    for n in 1..=5 {
        let tb = Basis::new(Family::UTau, n);
        let l = flat::l_matrix(tb).map_err(err)?;
        for r in 0..=n / 2 {
            ensure(flat::primitivity_check(n, r).map_err(err)?, || {
                format!("Λπ_(2r,r) != 0 for n = {n}, r = {r}")
            })?;
            let prim = flat::pi_in_tau(n, 2 * r, r);
            let mut cur = prim;
            for k in 2 * r..=2 * n - 2 * r {
                ensure(cur == flat::pi_in_tau(n, k, r), || {
                    format!("π_({k},{r}) != L^(k-2r) π_(2r,r) for n = {n}")
                })?;
                cur = l.apply(&cur).map_err(err)?;
            }
            ensure(cur.is_zero(), || format!("L^(2n-4r+1) π_(2r,r) != 0 for n = {n}"))?;
        }
    }
    Ok(())
}

fn model_kernel() -> Outcome {
    for m in (0..=12).step_by(2) {
        for k in 0..=m {
            let p = HomogPoly::monomial(m, k, Scalar::one()).map_err(err)?;
            let z = p.op_ylambda().z_apply().map_err(err)?;
            ensure(z.is_zero(), || format!("Z Y_λ x^{k} y^{} != 0", m - k))?;
        }
    }
    for m in (0..=12).step_by(2) {
        let y_m = HomogPoly::monomial(m, 0, Scalar::one()).map_err(err)?;
        let z0 = y_m.z_apply().map_err(err)?;
        for k in 0..=m {
            // Project x^k y^{m−k} onto ker Z along y^m.
            let mut p = HomogPoly::monomial(m, k, Scalar::one()).map_err(err)?;
            let z = p.z_apply().map_err(err)?;
            p = p.sub(&y_m.scale(&(z / z0.clone()))).map_err(err)?;
            if p.is_zero() {
                continue;
            }
            let back = sl2::pi_map(&p).map_err(err)?.op_ylambda();
            ensure(back == p, || format!("Y_λ Π != id on ker Z at m = {m}, k = {k}"))?;
        }
    }
    Ok(())
}

fn stable_and_euler() -> Outcome {
    for n in 1..=5 {
        let d = der::derivative_complex(n, Family::CSigmaLam).map_err(err)?;
        for (r, psi) in kernel::stable_basis(n).iter().enumerate() {
            ensure(d.apply(psi).map_err(err)?.is_zero(), || format!("∂ψ_{} != 0, n = {n}", 2 * r))?;
        }
        let chi = kernel::euler_complex(n);
        ensure(d.apply(&chi).map_err(err)?.is_zero(), || format!("∂χ != 0, n = {n}"))?;
        let tau = bases::convert(&chi, Family::CTauLam).map_err(err)?;
        for r in 0..=n / 2 {
            let want = (Scalar::lambda() / Scalar::pi()).powi(r as i32)
                * double_factorial_s(2 * r as i64 - 1)
                / Scalar::from_int(2).powi(r as i32);
            ensure(tau.coeff(&Label::Pair(2 * r, r)) == want, || {
                format!("[τ_(2r,r)]χ mismatch at n = {n}, r = {r}")
            })?;
        }
        let at0 = chi
            .try_map(|x| x.subst_lambda(&BigRational::from_integer(0.into())))
            .map_err(err)?;
        let mu = bases::convert(&at0, Family::CMuLam).map_err(err)?;
        ensure(
            mu == ValExpr::basis_element(Basis::new(Family::CMuLam, n), Label::Pair(0, 0)).map_err(err)?,
            || format!("χ at λ = 0 is not μ_(0,0) for n = {n}"),
        )?;
    }
    Ok(())
}

fn random_scalar(rng: &mut StdRng) -> Scalar {
    let a = Scalar::from_int(rng.gen_range(-5..=5));
    let b = Scalar::from_int(rng.gen_range(-3..=3)) * Scalar::lambda();
    let c = Scalar::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=4)) * Scalar::pi();
    a + b + c
}

fn preimage_complex() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    for n in 1..=4 {
        let b = Basis::new(Family::CSigmaLam, n);
        let d = der::derivative_complex(n, Family::CSigmaLam).map_err(err)?;
        for trial in 0..20 {
            let mut x = ValExpr::zero(b);
            for l in b.labels() {
                if rng.gen_bool(0.6) {
                    x.add_term(l, random_scalar(&mut rng)).map_err(err)?;
                }
            }
            let v = d.apply(&x).map_err(err)?;
            ensure(kernel::image_membership_complex(&v).map_err(err)?, || {
                format!("∂x rejected by the image test, n = {n}, trial {trial}")
            })?;
            let (w, _) = kernel::preimage_complex(&v).map_err(err)?;
            ensure(d.apply(&w).map_err(err)? == v, || {
                format!("∂(preimage) != v, n = {n}, trial {trial}")
            })?;
            kernel::stable_coordinates(&w.sub(&x).map_err(err)?)
                .map_err(|e| format!("preimage - x not stable, n = {n}: {e}"))?;
        }
        // The image test agrees with exact solvability on every basis element.
        for l in b.labels() {
            let e = ValExpr::basis_element(b, l).map_err(err)?;
            let solvable = linalg::solve(&d, &e).map_err(err)?.is_some();
            ensure(solvable == kernel::image_membership_complex(&e).map_err(err)?, || {
                format!("image test disagrees with linear solve at n = {n}, {l}")
            })?;
        }
    }
    Ok(())
}

fn crofton() -> Outcome {
    for d in 1..=8 {
        let dm = der::derivative_real_sigma(d);
        ensure(dm.apply(&kernel::euler_real(d)).map_err(err)?.is_zero(), || {
            format!("∂χ != 0 in real d = {d}")
        })?;
        for k in 1..=d {
            let got = dm.apply(&kernel::crofton(d, k).map_err(err)?).map_err(err)?;
            let want = ValExpr::basis_element(dm.domain(), Label::Single(k - 1))
                .map_err(err)?
                .scale(&kernel::crofton_derivative_factor(d, k));
            ensure(got == want, || format!("∂φ^{k} mismatch at d = {d}"))?;
        }
    }
    Ok(())
}

fn spectrum_complex() -> Outcome {
    for n in 1..=4 {
        let rep = spectral::spectrum_complex(n).map_err(err)?;
        let op = der::derivative_complex(n, Family::CSigmaLam).map_err(err)?;
        ensure(rep.check(&op).map_err(err)?, || format!("eigen relation fails at n = {n}"))?;
        for r in 0..=n / 2 {
            for k in 0..=2 * n - 4 * r {
                let val = RhoScalar::rho_multiple(Scalar::from_int(2 * k as i64 - 2 * n as i64 + 4 * r as i64));
                ensure(rep.multiplicity(&val) > 0, || format!("missing eigenvalue at n = {n}"))?;
            }
        }
        let total: usize = rep.eigenspaces.iter().map(|e| e.vectors.len()).sum();
        ensure(total == op.domain().dim(), || format!("eigenvectors do not span at n = {n}"))?;
        ensure(rep.dim_ker == rep.multiplicity(&RhoScalar::zero()), || {
            format!("kernel dimension disagrees with the zero eigenspace at n = {n}")
        })?;
    }
    Ok(())
}

fn spectrum_real() -> Outcome {
    for d in 1..=8 {
        let rep = spectral::spectrum_real(d).map_err(err)?;
        let op = der::derivative_real_sigma(d);
        ensure(rep.check(&op).map_err(err)?, || format!("eigen relation fails at d = {d}"))?;
        if d % 2 == 0 {
            let total: usize = rep.eigenspaces.iter().map(|e| e.vectors.len()).sum();
            ensure(total == (d + 1) as usize && rep.dim_ker == rep.dim_ker2, || {
                format!("even d = {d} is not diagonalizable as expected")
            })?;
            let half = d as i64 / 2;
            for k in 0..d as i64 {
                let val = RhoScalar::rho_multiple(Scalar::from_int(2 * k - 2 * half + 1));
                ensure(rep.multiplicity(&val) == 1, || format!("eigenvalue missing at d = {d}"))?;
            }
            ensure(rep.multiplicity(&RhoScalar::zero()) == 1, || format!("zero eigenvalue at d = {d}"))?;
        } else {
            ensure(rep.dim_ker == 1 && rep.dim_ker2 == 2, || {
                format!("odd d = {d}: dim ker = {}, dim ker² = {}", rep.dim_ker, rep.dim_ker2)
            })?;
        }
    }
    Ok(())
}

/// Numerically evaluates a λ-substituted trig matrix at t.
fn eval_dense(
    ctx: &mut NumCtx,
    m: &OperatorMatrix<TrigPoly>,
    lambda: &BigRational,
    t: &BigRational,
) -> crate::Result<Vec<Vec<astro_float::BigFloat>>> {
    let tf = ctx.rational(t);
    let pt = ctx.trig_point(lambda, &tf);
    let rows = m.codomain().labels();
    let cols = m.domain().labels();
    let mut out = Vec::with_capacity(rows.len());
    for r in &rows {
        let mut row = Vec::with_capacity(cols.len());
        for c in &cols {
            row.push(ctx.trig(&m.get(r, c), &pt)?);
        }
        out.push(row);
    }
    Ok(out)
}

fn semigroup() -> Outcome {
    let mut ctx = NumCtx::with_digits(SEMIGROUP_DIGITS);
    let mut rng = StdRng::seed_from_u64(SEED ^ 9);
    let lambdas = [
        BigRational::from_integer((-1).into()),
        BigRational::new(1.into(), 2.into()),
        BigRational::from_integer(1.into()),
    ];
    let mut mats = Vec::new();
    for n in 1..=3 {
        mats.push(tube::tube_complex(n));
    }
    for d in 1..=5 {
        mats.push(tube::tube_real(d).map_err(err)?);
    }
    let denom = BigInt::from(4_000_000);
    for lam in &lambdas {
        let subst: Vec<_> = mats
            .iter()
            .map(|m| m.try_map(|p| p.subst_lambda(lam)))
            .collect::<crate::Result<_>>()
            .map_err(err)?;
        for _ in 0..SEMIGROUP_PAIRS {
            let t = BigRational::new(rng.gen_range(1..4_000_000).into(), denom.clone());
            let u = BigRational::new(rng.gen_range(1..4_000_000).into(), denom.clone());
            let tu = &t + &u;
            for m in &subst {
                let a = eval_dense(&mut ctx, m, lam, &t).map_err(err)?;
                let b = eval_dense(&mut ctx, m, lam, &u).map_err(err)?;
                let s = eval_dense(&mut ctx, m, lam, &tu).map_err(err)?;
                let dim = a.len();
                for i in 0..dim {
                    for j in 0..dim {
                        let mut acc = ctx.zero();
                        for k in 0..dim {
                            acc = ctx.add(&acc, &ctx.mul(&a[i][k], &b[k][j]));
                        }
                        let defect = ctx.sub(&s[i][j], &acc);
                        ensure(below_exp10(&ctx, &defect, SEMIGROUP_TOL_EXP10), || {
                            format!(
                                "defect {} on {} at λ = {lam}",
                                ctx.format(&defect, 5),
                                m.domain()
                            )
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn structure_maps() -> Outcome {
    for n in 1..=2 {
        let g = structure::map_g(n, 1).to_trig();
        let lhs = tube::tube_complex(n + 2).compose(&g).map_err(err)?;
        let rhs = g.compose(&tube::tube_complex(n)).map_err(err)?;
        ensure(lhs == rhs, || format!("T∘G != G∘T at n = {n}"))?;
        let g0 = structure::map_g(n, 0);
        ensure(g0 == OperatorMatrix::identity(g0.domain()), || "G with j = 0".into())?;
    }
    for n in 1..=3 {
        for r in 0..=n / 2 {
            let f = structure::map_f(n, r).map_err(err)?.to_trig();
            let lhs = tube::tube_complex(n).compose(&f).map_err(err)?;
            let real = tube::tube_real_hyper(2 * n - 4 * r + 1).map_err(err)?;
            let rhs = f.compose(&real).map_err(err)?;
            ensure(lhs == rhs, || format!("T∘F != F∘T at n = {n}, r = {r}"))?;
        }
    }
    Ok(())
}

fn json_roundtrip() -> Outcome {
    let t = tube::tube_complex(2);
    ensure(OperatorMatrix::<TrigPoly>::from_json(&t.to_json()).map_err(err)? == t, || {
        "tube matrix JSON".into()
    })?;
    let d = der::derivative_real_sigma(4);
    ensure(OperatorMatrix::<Scalar>::from_json(&d.to_json()).map_err(err)? == d, || {
        "derivative matrix JSON".into()
    })?;
    let rep = spectral::spectrum_complex(1).map_err(err)?;
    for e in &rep.eigenspaces {
        for v in &e.vectors {
            ensure(ValExpr::<RhoScalar>::from_json(&v.to_json()).map_err(err)? == *v, || {
                "eigenvector JSON".into()
            })?;
        }
    }
    let chi = kernel::euler_complex(3);
    ensure(ValExpr::<Scalar>::from_json(&chi.to_json()).map_err(err)? == chi, || {
        "expression JSON".into()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = checks().iter().map(|c| c.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), checks().len());
    }

    #[test]
    fn cheap_checks_pass() {
        for (name, _, out) in run(Some("l")) {
            if name == "semigroup" {
                continue;
            }
            assert!(out.is_ok(), "{name}: {out:?}");
        }
    }
}

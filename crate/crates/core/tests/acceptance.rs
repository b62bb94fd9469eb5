//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Each criterion runs the matching `verify` checks and then a few values
//! worked out by hand or from elementary geometry.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use valtube::algebra::{Basis, Family, Label, ValExpr};
use valtube::scalar::numeric::NumCtx;
use valtube::scalar::{omega, Scalar, TrigPoly};
use valtube::sl2::{self, HomogPoly};
use valtube::spaceform::{derivative as der, kernel, spectral, structure, tube};
use valtube::{flat, verify};

/// Every suite must finish within this budget.
const SUITE_LIMIT: Duration = Duration::from_secs(60);
/// Agreement between the arbitrary-precision evaluator and f64 closed forms.
const F64_TOL: f64 = 1e-13;

type Outcome = Result<(), String>;
type Criterion = (u8, &'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: &str) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn int(k: i64) -> Scalar {
    Scalar::from_int(k)
}

fn lam() -> Scalar {
    Scalar::lambda()
}

fn tp(k: Scalar, s: u32, c: u32, t: u32) -> TrigPoly {
    TrigPoly::term(k, s, c, t)
}

fn expr<K: valtube::scalar::Ring>(b: Basis, terms: Vec<(Label, K)>) -> ValExpr<K> {
    ValExpr::from_terms(b, terms).expect("valid labels")
}

fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// `p` at (λ, t) through the arbitrary-precision evaluator, as f64.
fn eval_f64(p: &TrigPoly, lambda: &BigRational, t: &str) -> f64 {
    let mut ctx = NumCtx::with_digits(30);
    let tt = ctx.parse_decimal(t).expect("decimal");
    let pt = ctx.trig_point(lambda, &tt);
    let v = ctx.trig(p, &pt).expect("evaluable");
    ctx.format(&v, 25).parse().expect("float")
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= F64_TOL * (1.0 + b.abs())
}

fn run_checks(criterion: u8) -> Outcome {
    for c in verify::checks().into_iter().filter(|c| c.criterion == criterion) {
        (c.run)().map_err(|e| format!("{}: {e}", c.name))?;
    }
    Ok(())
}

fn c1() -> Outcome {
    run_checks(1)?;
    let b = Basis::new(Family::CSigmaLam, 1);
    let d = der::derivative(b).map_err(|e| e.to_string())?;
    // t-derivative at 0 of 2sc σ00 + (1 − 2λs²) σ10 − 2λsc σ20
    let want = expr(b, vec![(Label::Pair(0, 0), int(2)), (Label::Pair(2, 0), -(int(2) * lam()))]);
    ensure(d.column(&Label::Pair(1, 0)) == want, "complex n=1 derivative of sigma_{1,0}")?;
    let r = Basis::new(Family::RSigma, 3);
    let dr = der::derivative(r).map_err(|e| e.to_string())?;
    ensure(
        dr.column(&Label::Single(2)) == ValExpr::basis_element(r, Label::Single(1)).unwrap(),
        "real d=3 derivative of sigma_2",
    )
}

fn c2() -> Outcome {
    run_checks(2)?;
    let p = sl2::exp_t_ylambda(0, 1).map_err(|e| e.to_string())?;
    ensure(p.coeff(0) == TrigPoly::c(), "exp(tY)y has y-coefficient c")?;
    ensure(p.coeff(1) == TrigPoly::s().scale(&-lam()), "exp(tY)y has x-coefficient -lam s")?;
    ensure(sl2::phi_coeff(1, 1, 0) == TrigPoly::s(), "phi(1,1,0) = s")?;
    ensure(sl2::phi_coeff(1, 1, 1) == TrigPoly::c(), "phi(1,1,1) = c")?;
    ensure(
        sl2::phi_coeff(2, 1, 2) == tp(-(int(2) * lam()), 1, 1, 0),
        "phi(2,1,2) = -2 lam s c",
    )
}

fn c3() -> Outcome {
    run_checks(3)?;
    ensure(TrigPoly::s().derivative() == TrigPoly::c(), "s' = c")?;
    ensure(TrigPoly::c().derivative() == TrigPoly::s().scale(&-lam()), "c' = -lam s")?;
    let sc = tp(int(1), 1, 1, 0);
    ensure(
        sc.derivative() == TrigPoly::one().sub(&tp(int(2) * lam(), 2, 0, 0)),
        "(sc)' = 1 - 2 lam s^2",
    )?;
    let col = tube::tube_complex_column(1, 1, 0).map_err(|e| e.to_string())?;
    let b = Basis::new(Family::CSigmaLam, 1);
    let want = expr(
        b,
        vec![
            (Label::Pair(0, 0), tp(int(2), 1, 1, 0)),
            (Label::Pair(1, 0), TrigPoly::one().sub(&tp(int(2) * lam(), 2, 0, 0))),
            (Label::Pair(2, 0), tp(-(int(2) * lam()), 1, 1, 0)),
        ],
    );
    ensure(col == want, "complex n=1 tube of sigma_{1,0}")
}

fn c4() -> Outcome {
    run_checks(4)?;
    // Steiner in the plane: area of A_t = area + t·perimeter + πt²
    let m = flat::tube_flat_intrinsic_matrix(2);
    let b = Basis::new(Family::OMu, 2);
    let want = expr(
        b,
        vec![
            (Label::Single(0), tp(Scalar::pi(), 0, 0, 2)),
            (Label::Single(1), tp(int(2), 0, 0, 1)),
            (Label::Single(2), TrigPoly::one()),
        ],
    );
    ensure(m.column(&Label::Single(2)) == want, "planar Steiner row")?;
    let flat3 = tube::tube_real_flat(3).map_err(|e| e.to_string())?;
    ensure(
        flat3.column(&Label::Single(0)) == ValExpr::basis_element(flat3.domain(), Label::Single(0)).unwrap(),
        "flat real chi column is fixed",
    )
}

fn c5() -> Outcome {
    run_checks(5)?;
    // Geodesic disc of radius t about a point of S² (λ=1) has area 2π(1 − cos t),
    // and in H² (λ=−1) 2π(cosh t − 1). A point has σ_0 = 2π and σ_1 = σ_2 = 0.
    let m = tube::tube_real(2).map_err(|e| e.to_string())?;
    let entry = m.get(&Label::Single(0), &Label::Single(2));
    for (l, t, area) in [
        (ratio(1, 1), 0.9_f64, 2.0 * std::f64::consts::PI * (1.0 - 0.9_f64.cos())),
        (ratio(-1, 1), 0.9_f64, 2.0 * std::f64::consts::PI * (0.9_f64.cosh() - 1.0)),
        (ratio(1, 1), 2.5_f64, 2.0 * std::f64::consts::PI * (1.0 - 2.5_f64.cos())),
    ] {
        let got = 2.0 * std::f64::consts::PI * eval_f64(&entry, &l, &t.to_string());
        ensure(close(got, area), &format!("disc area at lambda={l}, t={t}: {got} vs {area}"))?;
    }
    Ok(())
}

fn c6() -> Outcome {
    run_checks(6)?;
    let b3 = Basis::new(Family::UMu, 3);
    let v = flat::op_lambda(&ValExpr::basis_element(b3, Label::Pair(3, 1)).unwrap()).map_err(|e| e.to_string())?;
    ensure(
        v == expr(b3, vec![(Label::Pair(2, 0), int(2)), (Label::Pair(2, 1), int(4))]),
        "Lambda mu_{3,1} = 2 mu_{2,0} + 4 mu_{2,1}",
    )?;
    let b2 = Basis::new(Family::UMu, 2);
    let v = flat::op_l(&ValExpr::basis_element(b2, Label::Pair(1, 0)).unwrap()).map_err(|e| e.to_string())?;
    ensure(
        v == expr(b2, vec![(Label::Pair(2, 0), int(2)), (Label::Pair(2, 1), int(2))]),
        "L mu_{1,0} = 2 mu_{2,0} + 2 mu_{2,1}",
    )?;
    let t = ValExpr::basis_element(Basis::new(Family::UTau, 2), Label::Pair(2, 0)).unwrap();
    let v = flat::tau_to_mu(&t).map_err(|e| e.to_string())?;
    ensure(
        v == expr(b2, vec![(Label::Pair(2, 0), int(1)), (Label::Pair(2, 1), int(1))]),
        "tau_{2,0} = mu_{2,0} + mu_{2,1}",
    )?;
    ensure(flat::primitivity_check(3, 1).map_err(|e| e.to_string())?, "pi_{2,1} primitive for n=3")
}

fn c7() -> Outcome {
    run_checks(7)?;
    let mono = |k| HomogPoly::monomial(2, k, int(1)).unwrap();
    ensure(mono(2).z_apply().unwrap() == int(2), "Z(x^2) = 2")?;
    ensure(mono(0).z_apply().unwrap() == int(2) * lam(), "Z(y^2) = 2 lam")?;
    ensure(mono(1).z_apply().unwrap().is_zero(), "Z(xy) = 0")?;
    let b = Basis::new(Family::CSigmaLam, 2);
    let inside = expr(b, vec![(Label::Pair(0, 0), int(1)), (Label::Pair(2, 0), -lam() / int(2))]);
    ensure(kernel::image_membership_complex(&inside).unwrap(), "sigma00 - lam/2 sigma20 in image")?;
    let outside = ValExpr::basis_element(b, Label::Pair(2, 0)).unwrap();
    ensure(!kernel::image_membership_complex(&outside).unwrap(), "sigma20 not in image")?;
    ensure(omega(5) == int(8) * Scalar::pi() * Scalar::pi() / int(15), "omega_5 = 8 pi^2/15")?;
    ensure(kernel::crofton_derivative_factor(2, 1) == Scalar::one() / Scalar::pi(), "Crofton factor d=2 k=1")
}

fn c8() -> Outcome {
    run_checks(8)?;
    let rho_multiples = |vals: Vec<valtube::scalar::RhoScalar>| -> Vec<Scalar> {
        vals.into_iter().map(|v| v.rho).collect()
    };
    let model = rho_multiples(sl2::eigenbasis_ylambda(2).into_iter().map(|(v, _)| v).collect());
    let mut model = model;
    model.sort_by_key(|x| x.to_string());
    let mut want = vec![int(-2), Scalar::zero(), int(2)];
    want.sort_by_key(|x| x.to_string());
    ensure(model == want, "model spectrum m=2 is {-2rho, 0, 2rho}")?;
    let rep = spectral::spectrum_complex(1).map_err(|e| e.to_string())?;
    let vals = rho_multiples(rep.eigenspaces.iter().map(|e| e.value.clone()).collect());
    ensure(vals == vec![int(-2), Scalar::zero(), int(2)], "complex n=1 spectrum")?;
    let r3 = spectral::spectrum_real(3).map_err(|e| e.to_string())?;
    ensure(r3.dim_ker == 1 && r3.dim_ker2 == 2, "real d=3 Jordan block")
}

fn c9() -> Outcome {
    run_checks(9)?;
    // the evaluator against libm: σ_0 column of the real d=2 tube is (c, −λs, 0)
    let m = tube::tube_real(2).map_err(|e| e.to_string())?;
    let c = m.get(&Label::Single(0), &Label::Single(0));
    let s = m.get(&Label::Single(1), &Label::Single(0));
    let t = 0.7_f64;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for (l, cw, sw) in [
        (ratio(1, 1), t.cos(), -t.sin()),
        (ratio(-1, 1), t.cosh(), t.sinh()),
        (ratio(1, 2), (h * t).cos(), -0.5 * (h * t).sin() / h),
    ] {
        ensure(close(eval_f64(&c, &l, "0.7"), cw), &format!("cos_lambda at lambda={l}"))?;
        ensure(close(eval_f64(&s, &l, "0.7"), sw), &format!("-lambda sin_lambda at lambda={l}"))?;
    }
    Ok(())
}

fn c10() -> Outcome {
    run_checks(10)?;
    for n in 1..=3 {
        let g = structure::map_g(n, 0);
        ensure(
            g == valtube::algebra::OperatorMatrix::identity(Basis::new(Family::CSigmaLam, n)),
            "G with j=0 is the identity",
        )?;
    }
    Ok(())
}

fn cli(args: &[&str]) -> (Vec<u8>, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_valtube"))
        .args(args)
        .env_remove("VALTUBE_CACHE_DIR")
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code())
}

fn c11() -> Outcome {
    run_checks(11)?;
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let cases: [(&str, &[&str]); 4] = [
        ("tube_complex_n2_sigma.json", &["tube", "--space", "complex", "--n", "2", "--basis", "sigma", "--format", "json"]),
        ("tube_complex_n2_sigma.tex", &["tube", "--space", "complex", "--n", "2", "--basis", "sigma", "--format", "latex"]),
        ("tube_real_d3.json", &["tube", "--space", "real", "--d", "3", "--format", "json"]),
        ("tube_real_d3.tex", &["tube", "--space", "real", "--d", "3", "--format", "latex"]),
    ];
    for (file, args) in cases {
        let want = std::fs::read(golden.join(file)).map_err(|e| format!("{file}: {e}"))?;
        let (got, code) = cli(args);
        ensure(code == Some(0), &format!("{file}: nonzero exit"))?;
        ensure(got == want, &format!("{file}: output differs from the golden file"))?;
    }
    let (out, _) = cli(&["derivative", "--space", "real", "--d", "3", "--i", "2"]);
    ensure(out == b"d sigma^lam_{2} = sigma^lam_{1}\n", "derivative --d 3 --i 2")?;
    let (_, code) = cli(&["tube", "--space", "real", "--d", "3", "--lambda", "0.5"]);
    ensure(code == Some(2), "decimal lambda is rejected with exit 2")?;
    let (out, code) = cli(&["verify", "--all"]);
    ensure(code == Some(0), &format!("verify --all failed:\n{}", String::from_utf8_lossy(&out)))
}

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "intertwining oracle", c1),
        (2, "model-space flow", c2),
        (3, "tube/derivative consistency", c3),
        (4, "flat specialization", c4),
        (5, "volume rows", c5),
        (6, "sl2 relations and basis round-trips", c6),
        (7, "kernel and image machinery", c7),
        (8, "spectra", c8),
        (9, "semigroup", c9),
        (10, "structural commutation", c10),
        (11, "CLI golden files", c11),
    ];
    let mut failed = 0;
    for (k, name, f) in criteria {
        let start = Instant::now();
        let mut res = f();
        let dt = start.elapsed();
        if res.is_ok() && dt > SUITE_LIMIT {
            res = Err(format!("took {:.1}s, over the {}s budget", dt.as_secs_f64(), SUITE_LIMIT.as_secs()));
        }
        match res {
            Ok(()) => println!("PASS criterion {k}: {name} ({:.2}s)", dt.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {k}: {name}: {e}");
            }
        }
    }
    println!(
        "semigroup tolerance 1e-{} at {} digits, {} pairs, seed {:#x}",
        verify::SEMIGROUP_TOL_EXP10,
        verify::SEMIGROUP_DIGITS,
        verify::SEMIGROUP_PAIRS,
        verify::SEED
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

//! The `valtube` command line.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::{Basis, Family, Label, OperatorMatrix, ValExpr};
use crate::emit::{self, expr_doc, matrix_doc, parse_rational, parse_scalar, Format, OpName, Style};
use crate::error::{Error, Result};
use crate::flat;
use crate::scalar::numeric::NumCtx;
use crate::scalar::{Ring, TrigPoly};
use crate::spaceform::{bases, derivative as der, kernel, spectral, tube};
use crate::verify;

#[derive(Parser, Debug)]
#[command(name = "valtube", version, about = "Tube formulas and derivative operators for invariant valuations on space forms")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// The tube operator T_t, or one column of it.
    Tube(Common),
    /// The derivative operator, or one column of it.
    Derivative(Common),
    /// Eigenvalues and eigenvectors of the derivative.
    Spectrum(Common),
    /// Change of basis, of an expression or as a matrix.
    Convert {
        #[command(flatten)]
        common: Common,
        /// Target basis.
        #[arg(long)]
        to: String,
    },
    /// Stable valuations and the Euler characteristic.
    Kernel(Common),
    /// Membership in the image of the derivative.
    Image(Common),
    /// A preimage under the derivative, with the kernel.
    Preimage(Common),
    /// Run the invariant suite.
    Verify {
        /// Run every check (the default).
        #[arg(long)]
        all: bool,
        /// Run checks whose name contains this string.
        #[arg(long)]
        check: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Space {
    Complex,
    Real,
    FlatUnitary,
    FlatOrthogonal,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, value_enum)]
    pub space: Space,
    /// Complex dimension (complex and flat-unitary spaces).
    #[arg(long)]
    pub n: Option<u32>,
    /// Dimension of the real space form.
    #[arg(long)]
    pub d: Option<u32>,
    /// Dimension of the euclidean space (flat-orthogonal).
    #[arg(long)]
    pub m: Option<u32>,
    /// Basis name: mu, tau, pi, sigma, or hyper (real hyperplane).
    #[arg(long)]
    pub basis: Option<String>,
    #[arg(long)]
    pub k: Option<u32>,
    /// Second index of π/σ labels.
    #[arg(long)]
    pub r: Option<u32>,
    /// Second index of μ/τ labels.
    #[arg(long)]
    pub q: Option<u32>,
    /// Index of single-index labels.
    #[arg(long)]
    pub i: Option<u32>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Exact curvature as p/q.
    #[arg(long)]
    pub lambda: Option<String>,
    /// Decimal t for numeric evaluation (needs --lambda).
    #[arg(long)]
    pub t: Option<String>,
    /// Significant digits for numeric evaluation.
    #[arg(long, default_value_t = 30)]
    pub precision: usize,
    /// `label=scalar`, e.g. `1,0=lam/2`; repeatable.
    #[arg(long = "term")]
    pub terms: Vec<String>,
    /// JSON file holding an expression.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

impl Common {
    fn ambient(&self) -> Result<u32> {
        let (v, flag) = match self.space {
            Space::Complex | Space::FlatUnitary => (self.n, "--n"),
            Space::Real => (self.d, "--d"),
            Space::FlatOrthogonal => (self.m, "--m"),
        };
        let a = v.ok_or_else(|| invalid(format!("{flag} is required for this space")))?;
        if a == 0 {
            return Err(invalid(format!("{flag} must be at least 1")));
        }
        Ok(a)
    }

    fn family_named(&self, name: Option<&str>) -> Result<Family> {
        let name = name.unwrap_or(match self.space {
            Space::Complex | Space::Real => "sigma",
            _ => "mu",
        });
        let f = match (self.space, name) {
            (Space::Complex, "mu") => Family::CMuLam,
            (Space::Complex, "tau") => Family::CTauLam,
            (Space::Complex, "pi") => Family::CPiLam,
            (Space::Complex, "sigma") => Family::CSigmaLam,
            (Space::Real, "sigma") => Family::RSigma,
            (Space::Real, "tau") => Family::RTau,
            (Space::Real, "hyper") => Family::RHyper,
            (Space::FlatUnitary, "mu") => Family::UMu,
            (Space::FlatUnitary, "tau") => Family::UTau,
            (Space::FlatUnitary, "pi") => Family::UPi,
            (Space::FlatUnitary, "sigma") => Family::USigma,
            (Space::FlatOrthogonal, "mu") => Family::OMu,
            _ => name.parse().map_err(|_| {
                invalid(format!("basis {name:?} is not available on this space"))
            })?,
        };
        Ok(f)
    }

    fn basis(&self) -> Result<Basis> {
        Ok(Basis::new(self.family_named(self.basis.as_deref())?, self.ambient()?))
    }

    /// The label picked by --k/--r/--q/--i, if any.
    fn label(&self, b: Basis) -> Result<Option<Label>> {
        let l = if b.family.is_single() {
            if self.r.is_some() || self.q.is_some() {
                return Err(invalid("single-index bases take --i (or --k)"));
            }
            match (self.i, self.k) {
                (Some(_), Some(_)) => return Err(invalid("give --i or --k, not both")),
                (Some(i), None) | (None, Some(i)) => Some(Label::Single(i)),
                (None, None) => None,
            }
        } else {
            if self.i.is_some() {
                return Err(invalid("two-index bases take --k with --r or --q"));
            }
            match (self.k, self.r.or(self.q)) {
                (Some(k), Some(s)) => Some(Label::Pair(k, s)),
                (None, None) => None,
                _ => return Err(invalid("two-index labels need both --k and --r/--q")),
            }
        };
        if let Some(l) = &l {
            b.check(l)?;
        }
        Ok(l)
    }

    fn exact_lambda(&self) -> Result<Option<BigRational>> {
        match &self.lambda {
            None => Ok(None),
            Some(s) => {
                if s.contains('.') || s.contains('e') {
                    return Err(invalid(format!(
                        "--lambda takes an exact rational p/q, got {s:?}"
                    )));
                }
                Ok(Some(parse_rational(s)?))
            }
        }
    }

    /// The expression given through --term or --input, in basis `b`.
    fn expression(&self, b: Basis) -> Result<Option<ValExpr>> {
        match (&self.input, self.terms.is_empty()) {
            (Some(_), false) => Err(invalid("give --term or --input, not both")),
            (Some(path), true) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
                let v: Value = serde_json::from_str(&text)?;
                Ok(Some(ValExpr::from_json(&v)?))
            }
            (None, false) => {
                let mut e = ValExpr::zero(b);
                for t in &self.terms {
                    let (lab, val) = t
                        .split_once('=')
                        .ok_or_else(|| invalid(format!("term {t:?} is not label=value")))?;
                    let idx: Vec<u32> = lab
                        .split(',')
                        .map(|x| x.trim().parse::<u32>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| invalid(format!("bad label in {t:?}")))?;
                    let l = Label::from_slice(&idx)?;
                    e.add_term(l, parse_scalar(val)?)?;
                }
                Ok(Some(e))
            }
            (None, true) => Ok(None),
        }
    }
}

/// Memoized symbolic matrices under VALTUBE_CACHE_DIR.
fn cached<K: Ring>(key: &str, build: impl FnOnce() -> Result<OperatorMatrix<K>>) -> Result<OperatorMatrix<K>> {
    let Some(dir) = std::env::var_os("VALTUBE_CACHE_DIR") else {
        return build();
    };
    let dir = PathBuf::from(dir);
    let path = dir.join(format!("{key}.json"));
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(v) = serde_json::from_str::<Value>(&text) {
            if let Ok(m) = OperatorMatrix::from_json(&v) {
                return Ok(m);
            }
        }
    }
    let m = build()?;
    if std::fs::create_dir_all(&dir).is_ok() {
        let tmp = dir.join(format!("{key}.json.{}", std::process::id()));
        if std::fs::write(&tmp, m.to_json().to_string()).is_ok() {
            let _ = std::fs::rename(&tmp, &path);
        }
    }
    Ok(m)
}

fn lift(m: OperatorMatrix) -> OperatorMatrix<TrigPoly> {
    m.to_trig()
}

fn tube_matrix(b: Basis, lambda_zero: bool) -> Result<OperatorMatrix<TrigPoly>> {
    let key = format!("tube-{}-{}{}", b.family.name(), b.ambient, if lambda_zero { "-flat" } else { "" });
    cached(&key, || match b.family {
        Family::OMu => Ok(flat::tube_flat_intrinsic_matrix(b.ambient)),
        Family::UPi => Ok(flat::tube_flat_pi_matrix(b.ambient)),
        Family::UMu | Family::UTau | Family::USigma => {
            let n = b.ambient;
            let into = lift(flat::unitary_change(n, Family::UPi, b.family)?);
            let back = lift(flat::unitary_change(n, b.family, Family::UPi)?);
            into.compose(&flat::tube_flat_pi_matrix(n).compose(&back)?)
        }
        _ if lambda_zero => tube::tube_at_zero_curvature(b),
        _ => tube::tube(b),
    })
}

fn derivative_matrix(b: Basis) -> Result<OperatorMatrix> {
    let key = format!("derivative-{}-{}", b.family.name(), b.ambient);
    cached(&key, || match b.family {
        Family::OMu | Family::UMu | Family::UTau => flat::flat_derivative_matrix(b),
        Family::UPi | Family::USigma => {
            let n = b.ambient;
            let mu = flat::flat_derivative_matrix(Basis::new(Family::UMu, n))?;
            let into = flat::unitary_change(n, Family::UMu, b.family)?;
            let back = flat::unitary_change(n, b.family, Family::UMu)?;
            into.compose(&mu.compose(&back)?)
        }
        _ => der::derivative(b),
    })
}

fn need_curved(b: Basis, verb: &str) -> Result<()> {
    if b.family.is_curved() {
        Ok(())
    } else {
        Err(Error::UnsupportedBasis(format!("{verb} is defined on the curved spaces, not {b}")))
    }
}

fn numeric_doc(
    f: Format,
    m: &OperatorMatrix<TrigPoly>,
    cols: &[Label],
    lambda: &BigRational,
    t_src: &str,
    digits: usize,
) -> Result<String> {
    let mut ctx = NumCtx::with_digits(digits);
    let t = ctx.parse_decimal(t_src)?;
    let pt = ctx.trig_point(lambda, &t);
    let st = if f == Format::Latex { Style::Latex } else { Style::Text };
    let mut lines = Vec::new();
    let mut entries = Vec::new();
    for c in cols {
        let col = m.column(c);
        let mut parts = Vec::new();
        for (r, p) in col.terms() {
            let v = ctx.trig(p, &pt)?;
            let s = ctx.format(&v, digits);
            entries.push(json!({"row": r, "col": c, "value": s}));
            let (neg, body) = match s.strip_prefix('-') {
                Some(b) => (true, b.to_string()),
                None => (false, s.clone()),
            };
            let sep = if st == Style::Latex { " " } else { "*" };
            parts.push(emit::Part {
                neg,
                body: format!("{body}{sep}{}", emit::symbol(st, m.codomain(), r)),
            });
        }
        let prefix = if st == Style::Latex { "\\mathbf{T}_t " } else { "T_t " };
        lines.push((
            format!("{prefix}{}", emit::symbol(st, m.domain(), c)),
            emit::join(&parts),
        ));
    }
    Ok(match f {
        Format::Json => {
            let doc = json!({
                "domain": m.domain(),
                "codomain": m.codomain(),
                "lambda": lambda.to_string(),
                "t": t_src,
                "digits": digits,
                "entries": entries,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc)?)
        }
        Format::Text => lines.iter().map(|(l, r)| format!("{l} = {r}\n")).collect(),
        Format::Latex => {
            let mut s = String::from("\\begin{align*}\n");
            let n = lines.len();
            for (i, (l, r)) in lines.iter().enumerate() {
                let end = if i + 1 < n { " \\\\" } else { "" };
                s.push_str(&format!("{l} &= {r}{end}\n"));
            }
            s.push_str("\\end{align*}\n");
            s
        }
    })
}

fn selected_columns<K: Ring>(m: &OperatorMatrix<K>, label: Option<Label>) -> Vec<Label> {
    match label {
        Some(l) => vec![l],
        None => m.domain().labels(),
    }
}

fn column_doc<K: Ring + emit::Render>(f: Format, op: OpName, m: &OperatorMatrix<K>, l: Label) -> String {
    let st = if f == Format::Latex { Style::Latex } else { Style::Text };
    let prefix = match (op, st) {
        (OpName::Tube, Style::Text) => "T_t ",
        (OpName::Tube, Style::Latex) => "\\mathbf{T}_t ",
        (OpName::Derivative, Style::Text) => "d ",
        (OpName::Derivative, Style::Latex) => "\\partial ",
        (OpName::Change, _) => "",
    };
    let lhs = format!("{prefix}{}", emit::symbol(st, m.domain(), &l));
    expr_doc(f, Some(&lhs), &m.column(&l))
}

fn run_tube(c: &Common) -> Result<String> {
    let b = c.basis()?;
    let label = c.label(b)?;
    let lambda = c.exact_lambda()?;
    let flat_zero = lambda.as_ref().is_some_and(|l| l.is_zero());
    let m = tube_matrix(b, flat_zero && b.family.is_curved())?;
    if let Some(t) = &c.t {
        let lam = match (&lambda, b.family.is_curved()) {
            (Some(l), _) => l.clone(),
            (None, false) => BigRational::zero(),
            (None, true) => return Err(invalid("numeric evaluation needs --lambda p/q")),
        };
        if !b.family.is_curved() && !lam.is_zero() {
            return Err(invalid("flat spaces only admit lambda = 0"));
        }
        if c.precision == 0 {
            return Err(invalid("--precision must be positive"));
        }
        return numeric_doc(c.format, &m, &selected_columns(&m, label), &lam, t, c.precision);
    }
    let m = match &lambda {
        Some(l) if b.family.is_curved() => m.try_map(|p| p.subst_lambda(l))?,
        Some(l) if !l.is_zero() => return Err(invalid("flat spaces only admit lambda = 0")),
        _ => m,
    };
    Ok(match label {
        Some(l) => column_doc(c.format, OpName::Tube, &m, l),
        None => matrix_doc(c.format, OpName::Tube, &m),
    })
}

fn run_derivative(c: &Common) -> Result<String> {
    if c.t.is_some() {
        return Err(invalid("--t applies to the tube only"));
    }
    let b = c.basis()?;
    let label = c.label(b)?;
    let mut m = derivative_matrix(b)?;
    if let Some(l) = c.exact_lambda()? {
        m = m.try_map(|x| x.subst_lambda(&l))?;
    }
    Ok(match label {
        Some(l) => column_doc(c.format, OpName::Derivative, &m, l),
        None => matrix_doc(c.format, OpName::Derivative, &m),
    })
}

fn run_spectrum(c: &Common) -> Result<String> {
    let b = c.basis()?;
    let rep = match b.family {
        Family::CSigmaLam => spectral::spectrum_complex(b.ambient)?,
        Family::RSigma => spectral::spectrum_real(b.ambient)?,
        _ => {
            return Err(Error::UnsupportedBasis(format!(
                "spectra are reported in the sigma basis of a curved space, not {b}"
            )))
        }
    };
    Ok(emit::spectrum_doc(c.format, &rep))
}

fn change_matrix(from: Basis, to: Family) -> Result<OperatorMatrix> {
    if from.family.is_curved() {
        if to.is_curved() && from.family.flat_twin().is_some() == to.flat_twin().is_some() {
            return bases::curved_change(from.ambient, from.family, to);
        }
    } else if matches!(from.family, Family::UMu | Family::UTau | Family::UPi | Family::USigma) {
        return flat::unitary_change(from.ambient, from.family, to);
    }
    Err(Error::UnsupportedBasis(format!("no change of basis from {from} to {to}")))
}

fn run_convert(c: &Common, to: &str) -> Result<String> {
    let b = c.basis()?;
    let target = c.family_named(Some(to))?;
    match c.expression(b)? {
        Some(v) => {
            let m = change_matrix(v.basis(), target)?;
            Ok(expr_doc(c.format, None, &m.apply(&v)?))
        }
        None => Ok(matrix_doc(c.format, OpName::Change, &change_matrix(b, target)?)),
    }
}

fn in_family(v: &ValExpr, b: Basis) -> Result<ValExpr> {
    if v.basis() == b {
        return Ok(v.clone());
    }
    if v.basis().family == Family::RHyper && b.family == Family::RSigma {
        return v.relabel(b, |l| l);
    }
    change_matrix(v.basis(), b.family)?.apply(v)
}

fn run_kernel(c: &Common) -> Result<String> {
    let b = c.basis()?;
    need_curved(b, "kernel")?;
    let out_basis = if b.family == Family::RHyper { Basis::new(Family::RSigma, b.ambient) } else { b };
    let (stable, chi, coeffs) = if b.family.flat_twin().is_some() {
        let n = b.ambient;
        (
            kernel::stable_basis(n),
            kernel::euler_complex(n),
            (0..=n / 2).map(|r| kernel::euler_coefficient(n, r)).collect::<Vec<_>>(),
        )
    } else {
        let chi = kernel::euler_real(b.ambient);
        (vec![chi.clone()], chi, vec![])
    };
    let stable: Vec<ValExpr> = stable.iter().map(|v| in_family(v, out_basis)).collect::<Result<_>>()?;
    let chi = in_family(&chi, out_basis)?;
    let complex = b.family.flat_twin().is_some();
    Ok(match c.format {
        Format::Json => {
            let doc = json!({
                "basis": out_basis,
                "stable": stable.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
                "euler": chi.to_json(),
                "euler_coefficients": coeffs.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc)?)
        }
        f => {
            let st = if f == Format::Latex { Style::Latex } else { Style::Text };
            let mut s = String::new();
            if complex {
                for (r, v) in stable.iter().enumerate() {
                    let lhs = match st {
                        Style::Text => format!("psi_{{{}}}", 2 * r),
                        Style::Latex => format!("\\psi_{{{}}}", 2 * r),
                    };
                    s.push_str(&expr_doc(f, Some(&lhs), v));
                }
                for (r, a) in coeffs.iter().enumerate() {
                    let lhs = match st {
                        Style::Text => format!("a_{r}"),
                        Style::Latex => format!("a_{{{r}}}"),
                    };
                    let rhs = emit::render(st, a);
                    s.push_str(&match st {
                        Style::Text => format!("{lhs} = {rhs}\n"),
                        Style::Latex => format!("\\[\n{lhs} = {rhs}\n\\]\n"),
                    });
                }
            }
            s.push_str(&expr_doc(f, Some(if st == Style::Latex { "\\chi" } else { "chi" }), &chi));
            s
        }
    })
}

fn need_expression(c: &Common, b: Basis) -> Result<ValExpr> {
    c.expression(b)?
        .ok_or_else(|| invalid("an expression is required: use --term or --input"))
}

fn run_image(c: &Common) -> Result<String> {
    let b = c.basis()?;
    need_curved(b, "image")?;
    let v = need_expression(c, b)?;
    let (member, obstructions) = if v.basis().family.flat_twin().is_some() {
        let obs = kernel::image_obstructions(&v)?;
        (obs.iter().all(|x| x.is_zero()), obs)
    } else {
        let sig = in_family(&v, Basis::new(Family::RSigma, v.basis().ambient))?;
        let top = sig.coeff(&Label::Single(v.basis().ambient));
        (top.is_zero(), vec![top])
    };
    Ok(match c.format {
        Format::Json => {
            let doc = json!({
                "in_image": member,
                "obstructions": obstructions.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc)?)
        }
        f => {
            let st = if f == Format::Latex { Style::Latex } else { Style::Text };
            let mut s = format!("in image: {member}\n");
            for (r, o) in obstructions.iter().enumerate() {
                s.push_str(&format!("obstruction {r}: {}\n", emit::render(st, o)));
            }
            s
        }
    })
}

fn run_preimage(c: &Common) -> Result<String> {
    let b = c.basis()?;
    need_curved(b, "preimage")?;
    let v = need_expression(c, b)?;
    let (w, ker) = if v.basis().family.flat_twin().is_some() {
        kernel::preimage_complex(&v)?
    } else {
        kernel::preimage_real(&v)?
    };
    let out_basis = if b.family == Family::RHyper { Basis::new(Family::RSigma, b.ambient) } else { v.basis() };
    let w = in_family(&w, out_basis)?;
    let ker: Vec<ValExpr> = ker.iter().map(|k| in_family(k, out_basis)).collect::<Result<_>>()?;
    Ok(match c.format {
        Format::Json => {
            let doc = json!({
                "preimage": w.to_json(),
                "kernel": ker.iter().map(|k| k.to_json()).collect::<Vec<_>>(),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc)?)
        }
        f => {
            let mut s = expr_doc(f, Some("preimage"), &w);
            for (i, k) in ker.iter().enumerate() {
                s.push_str(&expr_doc(f, Some(&format!("kernel {i}")), k));
            }
            s
        }
    })
}

fn run_verify(check: Option<&str>) -> (String, bool) {
    let results = verify::run(check);
    let mut s = String::new();
    let mut ok = !results.is_empty();
    for (name, _, out) in &results {
        match out {
            Ok(()) => s.push_str(&format!("PASS {name}\n")),
            Err(e) => {
                ok = false;
                s.push_str(&format!("FAIL {name}: {e}\n"));
            }
        }
    }
    if results.is_empty() {
        s.push_str("no check matches the filter\n");
    }
    (s, ok)
}

/// Runs a parsed command; returns the document and the exit code.
pub fn run(cli: &Cli) -> (String, ExitCode) {
    let res = match &cli.verb {
        Verb::Tube(c) => run_tube(c),
        Verb::Derivative(c) => run_derivative(c),
        Verb::Spectrum(c) => run_spectrum(c),
        Verb::Convert { common, to } => run_convert(common, to),
        Verb::Kernel(c) => run_kernel(c),
        Verb::Image(c) => run_image(c),
        Verb::Preimage(c) => run_preimage(c),
        Verb::Verify { all: _, check } => {
            let (s, ok) = run_verify(check.as_deref());
            return (s, if ok { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    };
    match res {
        Ok(s) => (s, ExitCode::SUCCESS),
        Err(e) => (format!("error: {e}\n"), ExitCode::from(2)),
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let (doc, code) = run(&cli);
    if code == ExitCode::from(2) {
        eprint!("{doc}");
    } else {
        print!("{doc}");
    }
    code
}

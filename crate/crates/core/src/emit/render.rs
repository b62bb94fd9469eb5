//! Signed-term rendering of coefficients in text and LaTeX.

use crate::algebra::{Basis, Family, Label};
use crate::scalar::{Poly, RhoScalar, Scalar, TrigExp, TrigPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Text,
    Latex,
}

/// One summand: a sign and an unsigned body.
#[derive(Clone, Debug, PartialEq)]
pub struct Part {
    pub neg: bool,
    pub body: String,
}

pub fn join(parts: &[Part]) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        match (i, p.neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&p.body);
    }
    out
}

fn wrap(style: Style, s: &str) -> String {
    match style {
        Style::Text => format!("({s})"),
        Style::Latex => format!("\\left({s}\\right)"),
    }
}

/// Product of a coefficient with a (possibly empty) factor such as a basis symbol.
pub fn times(style: Style, coeff: &[Part], factor: &str) -> Vec<Part> {
    let sep = match style {
        Style::Text => "*",
        Style::Latex => " ",
    };
    match coeff {
        [] => vec![],
        [p] if p.body == "1" && !factor.is_empty() => vec![Part {
            neg: p.neg,
            body: factor.to_string(),
        }],
        [p] => vec![Part {
            neg: p.neg,
            body: if factor.is_empty() {
                p.body.clone()
            } else {
                format!("{}{sep}{factor}", p.body)
            },
        }],
        many => {
            let inner = wrap(style, &join(many));
            vec![Part {
                neg: false,
                body: if factor.is_empty() {
                    inner
                } else {
                    format!("{inner}{sep}{factor}")
                },
            }]
        }
    }
}

fn poly_parts(style: Style, p: &Poly) -> Vec<Part> {
    p.terms()
        .iter()
        .map(|(e, c)| {
            let mag = num_traits::Signed::abs(c);
            let mut factors: Vec<String> = Vec::new();
            let unit = num_traits::One::is_one(&mag);
            if !unit || (e.0 == 0 && e.1 == 0) {
                factors.push(mag.to_string());
            }
            let var = |name: &str, tex: &str, k: u32| match (style, k) {
                (_, 0) => None,
                (Style::Text, 1) => Some(name.to_string()),
                (Style::Text, k) => Some(format!("{name}^{k}")),
                (Style::Latex, 1) => Some(tex.to_string()),
                (Style::Latex, k) => Some(format!("{tex}^{{{k}}}")),
            };
            factors.extend(var("lam", "\\lambda", e.0));
            factors.extend(var("pi", "\\pi", e.1));
            let body = match style {
                Style::Text => factors.join("*"),
                Style::Latex => factors.join(" "),
            };
            Part {
                neg: num_traits::Signed::is_negative(c),
                body,
            }
        })
        .collect()
}

pub fn scalar_parts(style: Style, x: &Scalar) -> Vec<Part> {
    if x.is_zero() {
        return vec![];
    }
    let num = poly_parts(style, x.numer());
    if x.denom().is_one() {
        return num;
    }
    let den = poly_parts(style, x.denom());
    let den_s = join(&den);
    let (neg, num_s) = if num.len() == 1 {
        (num[0].neg, num[0].body.clone())
    } else {
        (false, join(&num))
    };
    let body = match style {
        Style::Latex => format!("\\frac{{{num_s}}}{{{den_s}}}"),
        Style::Text => {
            let n = if num.len() > 1 { format!("({num_s})") } else { num_s };
            let d = if den.len() > 1 || den_s.contains('*') {
                format!("({den_s})")
            } else {
                den_s
            };
            format!("{n}/{d}")
        }
    };
    vec![Part { neg, body }]
}

fn trig_monomial(style: Style, e: &TrigExp) -> String {
    let mut f: Vec<String> = Vec::new();
    let pw = |base: &str, k: u32| -> Option<String> {
        match (style, k) {
            (_, 0) => None,
            (Style::Text, 1) => Some(base.to_string()),
            (Style::Text, k) => Some(format!("{base}^{k}")),
            (Style::Latex, 1) => Some(format!("{base}(t)")),
            (Style::Latex, k) => Some(format!("{base}^{{{k}}}(t)")),
        }
    };
    match style {
        Style::Text => {
            f.extend(pw("s", e.s));
            f.extend(pw("c", e.c));
            f.extend(pw("t", e.t));
            f.join("*")
        }
        Style::Latex => {
            f.extend(pw("\\sin_\\lambda", e.s));
            f.extend(pw("\\cos_\\lambda", e.c));
            f.extend(match e.t {
                0 => None,
                1 => Some("t".to_string()),
                k => Some(format!("t^{{{k}}}")),
            });
            f.join(" ")
        }
    }
}

pub fn trig_parts(style: Style, p: &TrigPoly) -> Vec<Part> {
    let mut out = Vec::new();
    for (e, k) in p.terms() {
        out.extend(times(style, &scalar_parts(style, k), &trig_monomial(style, e)));
    }
    out
}

pub fn rho_parts(style: Style, x: &RhoScalar) -> Vec<Part> {
    let mut out = scalar_parts(style, &x.re);
    let rho = match style {
        Style::Text => "rho",
        Style::Latex => "\\rho",
    };
    out.extend(times(style, &scalar_parts(style, &x.rho), rho));
    out
}

/// Coefficient types the emitters know how to print.
pub trait Render {
    fn parts(&self, style: Style) -> Vec<Part>;
}

impl Render for Scalar {
    fn parts(&self, style: Style) -> Vec<Part> {
        scalar_parts(style, self)
    }
}

impl Render for TrigPoly {
    fn parts(&self, style: Style) -> Vec<Part> {
        trig_parts(style, self)
    }
}

impl Render for RhoScalar {
    fn parts(&self, style: Style) -> Vec<Part> {
        rho_parts(style, self)
    }
}

pub fn render<R: Render>(style: Style, x: &R) -> String {
    join(&x.parts(style))
}

/// The basis symbol for `l` in `b`, e.g. `\sigma^{\lambda}_{1,0}`.
pub fn symbol(style: Style, b: Basis, l: &Label) -> String {
    let (text, tex, curved) = match b.family {
        Family::OMu | Family::UMu => ("mu", "\\mu", false),
        Family::UTau => ("tau", "\\tau", false),
        Family::UPi => ("pi", "\\pi", false),
        Family::USigma => ("sigma", "\\sigma", false),
        Family::CMuLam => ("mu", "\\mu", true),
        Family::CTauLam | Family::RTau => ("tau", "\\tau", true),
        Family::CPiLam => ("pi", "\\pi", true),
        Family::CSigmaLam | Family::RSigma | Family::RHyper => ("sigma", "\\sigma", true),
    };
    let idx = l.to_vec().iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    match style {
        Style::Text if curved => format!("{text}^lam_{{{idx}}}"),
        Style::Text => format!("{text}_{{{idx}}}"),
        Style::Latex if curved => format!("{tex}^{{\\lambda}}_{{{idx}}}"),
        Style::Latex => format!("{tex}_{{{idx}}}"),
    }
}

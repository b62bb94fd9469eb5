//! Text, LaTeX and JSON documents for expressions, operators and spectra.

mod parse;
mod render;

pub use parse::{parse_rational, parse_scalar};
pub use render::{join, render, symbol, Part, Render, Style};

use serde_json::{json, Value};

use crate::algebra::{OperatorMatrix, ValExpr};
use crate::scalar::Ring;
use crate::spaceform::spectral::SpectralReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Latex,
    Json,
}

fn style(f: Format) -> Style {
    match f {
        Format::Latex => Style::Latex,
        _ => Style::Text,
    }
}

/// `Σ c_l · symbol(l)` in the given style.
pub fn expr_string<K: Ring + Render>(st: Style, v: &ValExpr<K>) -> String {
    let mut parts = Vec::new();
    for (l, c) in v.terms() {
        parts.extend(render::times(st, &c.parts(st), &symbol(st, v.basis(), l)));
    }
    render::join(&parts)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// A single expression, with an optional left-hand side such as `T_t sigma^lam_{1,0}`.
pub fn expr_doc<K: Ring + Render>(f: Format, lhs: Option<&str>, v: &ValExpr<K>) -> String {
    match f {
        Format::Json => pretty(&v.to_json()),
        Format::Text => match lhs {
            Some(l) => format!("{l} = {}\n", expr_string(Style::Text, v)),
            None => format!("{}\n", expr_string(Style::Text, v)),
        },
        Format::Latex => match lhs {
            Some(l) => format!("\\[\n{l} = {}\n\\]\n", expr_string(Style::Latex, v)),
            None => format!("\\[\n{}\n\\]\n", expr_string(Style::Latex, v)),
        },
    }
}

/// The operator symbol used on the left of each column line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpName {
    Tube,
    Derivative,
    Change,
}

fn op_prefix(st: Style, op: OpName) -> &'static str {
    match (st, op) {
        (Style::Text, OpName::Tube) => "T_t ",
        (Style::Text, OpName::Derivative) => "d ",
        (Style::Latex, OpName::Tube) => "\\mathbf{T}_t ",
        (Style::Latex, OpName::Derivative) => "\\partial ",
        (_, OpName::Change) => "",
    }
}

/// One line (or aligned row) per basis element: the image of that element.
pub fn matrix_doc<K: Ring + Render>(f: Format, op: OpName, m: &OperatorMatrix<K>) -> String {
    if f == Format::Json {
        return pretty(&m.to_json());
    }
    let st = style(f);
    let rows: Vec<(String, String)> = m
        .domain()
        .labels()
        .iter()
        .map(|l| {
            let lhs = format!("{}{}", op_prefix(st, op), symbol(st, m.domain(), l));
            (lhs, expr_string(st, &m.column(l)))
        })
        .collect();
    match f {
        Format::Text => {
            let mut s = format!("# {} -> {}\n", m.domain(), m.codomain());
            for (l, r) in rows {
                s.push_str(&format!("{l} = {r}\n"));
            }
            s
        }
        _ => {
            let mut s = String::from("\\begin{align*}\n");
            let n = rows.len();
            for (i, (l, r)) in rows.into_iter().enumerate() {
                let end = if i + 1 < n { " \\\\" } else { "" };
                s.push_str(&format!("{l} &= {r}{end}\n"));
            }
            s.push_str("\\end{align*}\n");
            s
        }
    }
}

pub fn spectrum_doc(f: Format, rep: &SpectralReport) -> String {
    match f {
        Format::Json => pretty(&json!({
            "basis": rep.basis,
            "dim_ker": rep.dim_ker,
            "dim_ker2": rep.dim_ker2,
            "eigenspaces": rep.eigenspaces.iter().map(|e| json!({
                "value": e.value.to_json(),
                "multiplicity": e.vectors.len(),
                "vectors": e.vectors.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = format!(
                "# spectrum on {}: dim ker = {}, dim ker^2 = {}\n",
                rep.basis, rep.dim_ker, rep.dim_ker2
            );
            for e in &rep.eigenspaces {
                s.push_str(&format!(
                    "eigenvalue {} (multiplicity {})\n",
                    render(Style::Text, &e.value),
                    e.vectors.len()
                ));
                for v in &e.vectors {
                    s.push_str(&format!("  {}\n", expr_string(Style::Text, v)));
                }
            }
            s
        }
        Format::Latex => {
            let mut s = String::from("\\begin{itemize}\n");
            s.push_str(&format!(
                "\\item $\\dim\\ker\\partial = {}$, $\\dim\\ker\\partial^2 = {}$\n",
                rep.dim_ker, rep.dim_ker2
            ));
            for e in &rep.eigenspaces {
                s.push_str(&format!("\\item ${}$:\n", render(Style::Latex, &e.value)));
                for v in &e.vectors {
                    s.push_str(&format!("  $v = {}$\n", expr_string(Style::Latex, v)));
                }
            }
            s.push_str("\\end{itemize}\n");
            s
        }
    }
}

//! Parser for scalar expressions such as `(1 - 2*lam)/(3*pi)` or `lam^2/4`.
//!
//! Accepts integers, `lam`/`lambda`, `pi`, `+ - * /`, `^` with integer exponents
//! and parentheses. Decimal points are rejected.

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(num_bigint::BigInt),
    Lam,
    Pi,
    Op(char),
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            if i < cs.len() && cs[i] == '.' {
                return Err(Error::Parse(format!(
                    "decimal literal in {src:?}; write rationals as p/q"
                )));
            }
            let s: String = cs[st..i].iter().collect();
            out.push(Tok::Int(s.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_alphabetic() {
                i += 1;
            }
            let w: String = cs[st..i].iter().collect();
            out.push(match w.as_str() {
                "lam" | "lambda" => Tok::Lam,
                "pi" => Tok::Pi,
                _ => return Err(Error::Parse(format!("unknown symbol {w:?}"))),
            });
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {src:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == '*' {
                acc * rhs
            } else {
                Field::div(&acc, &rhs)?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        if self.peek_op() == Some('+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek_op() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = match self.toks.get(self.pos) {
            Some(Tok::Int(k)) => i32::try_from(k.clone())
                .map_err(|_| Error::Parse(format!("exponent {k} too large")))?,
            _ => return Err(Error::Parse("expected an integer exponent".into())),
        };
        self.pos += 1;
        let e = if neg { -e } else { e };
        if e < 0 && base.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(base.powi(e))
    }

    fn atom(&mut self) -> Result<Scalar> {
        let t = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
        self.pos += 1;
        match t {
            Tok::Int(k) => Ok(Scalar::from_bigint(k)),
            Tok::Lam => Ok(Scalar::lambda()),
            Tok::Pi => Ok(Scalar::pi()),
            Tok::Op('(') => {
                let v = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::Parse("missing closing parenthesis".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            Tok::Op(c) => Err(Error::Parse(format!("unexpected {c:?}"))),
        }
    }
}

pub fn parse_scalar(src: &str) -> Result<Scalar> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {src:?}")));
    }
    Ok(v)
}

/// Parses an exact rational `p/q` or integer; anything with λ or π̂ is rejected.
pub fn parse_rational(src: &str) -> Result<num_rational::BigRational> {
    parse_scalar(src)?
        .as_rational()
        .ok_or_else(|| Error::Parse(format!("{src:?} is not a rational number")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_displayed_forms() {
        let x = (Scalar::one() - Scalar::from_int(2) * Scalar::lambda())
            / (Scalar::from_int(3) * Scalar::pi());
        assert_eq!(parse_scalar(&x.to_string()).unwrap(), x);
        assert_eq!(parse_scalar("-lam/2").unwrap(), -Scalar::lambda() / Scalar::from_int(2));
        assert_eq!(parse_scalar("lambda^2 * pi^-1").unwrap(), Scalar::lambda().powi(2) / Scalar::pi());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_scalar("0.5").is_err());
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("(1").is_err());
        assert!(parse_scalar("x").is_err());
        assert!(parse_rational("lam").is_err());
        assert_eq!(parse_rational("-3/6").unwrap(), num_rational::BigRational::new((-1).into(), 2.into()));
    }
}

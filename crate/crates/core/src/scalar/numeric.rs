//! Fixed-precision numeric evaluation at real λ and t.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::field::Scalar;
use super::poly::Poly;
use super::trig::TrigPoly;
use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

pub struct NumCtx {
    prec: usize,
    cc: Consts,
}

/// s, c at one (λ, t) point.
#[derive(Clone, Debug)]
pub struct TrigPoint {
    pub lambda: BigRational,
    pub s: BigFloat,
    pub c: BigFloat,
    pub t: BigFloat,
    pub pi: BigFloat,
}

impl NumCtx {
    /// Context carrying about `digits` significant decimal digits plus guard bits.
    pub fn with_digits(digits: usize) -> Self {
        let prec = (digits as f64 * 3.33) as usize + 64;
        NumCtx {
            prec,
            cc: Consts::new().expect("astro-float constant cache"),
        }
    }

    pub fn precision_bits(&self) -> usize {
        self.prec
    }

    pub fn int(&mut self, n: &BigInt) -> BigFloat {
        BigFloat::parse(&n.to_string(), Radix::Dec, self.prec, RM, &mut self.cc)
    }

    pub fn rational(&mut self, q: &BigRational) -> BigFloat {
        let n = self.int(q.numer());
        let d = self.int(q.denom());
        n.div(&d, self.prec, RM)
    }

    /// Parses a decimal literal such as `0.125` or `-3e-2`.
    pub fn parse_decimal(&mut self, s: &str) -> Result<BigFloat> {
        let v = BigFloat::parse(s.trim(), Radix::Dec, self.prec, RM, &mut self.cc);
        if v.is_nan() || v.is_inf() {
            return Err(Error::Parse(format!("not a decimal number: {s:?}")));
        }
        Ok(v)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.prec, RM)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.prec, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.prec, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.prec, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.prec, RM)
    }

    pub fn zero(&self) -> BigFloat {
        BigFloat::from_i32(0, self.prec)
    }

    pub fn one(&self) -> BigFloat {
        BigFloat::from_i32(1, self.prec)
    }

    fn powi(&self, x: &BigFloat, k: u32) -> BigFloat {
        let mut r = self.one();
        for _ in 0..k {
            r = self.mul(&r, x);
        }
        r
    }

    /// Evaluates s = sin_λ(t) and c = cos_λ(t).
    pub fn trig_point(&mut self, lambda: &BigRational, t: &BigFloat) -> TrigPoint {
        let pi = self.pi();
        let (s, c) = if lambda.is_zero() {
            (t.clone(), self.one())
        } else {
            let root = self.rational(&lambda.abs()).sqrt(self.prec, RM);
            let arg = self.mul(&root, t);
            if lambda.is_positive() {
                let s = arg.sin(self.prec, RM, &mut self.cc);
                let c = arg.cos(self.prec, RM, &mut self.cc);
                (self.div(&s, &root), c)
            } else {
                let s = arg.sinh(self.prec, RM, &mut self.cc);
                let c = arg.cosh(self.prec, RM, &mut self.cc);
                (self.div(&s, &root), c)
            }
        };
        TrigPoint {
            lambda: lambda.clone(),
            s,
            c,
            t: t.clone(),
            pi,
        }
    }

    fn eval_poly_pi(&mut self, p: &Poly, pi: &BigFloat) -> BigFloat {
        let mut acc = self.zero();
        for (e, c) in p.terms() {
            debug_assert_eq!(e.0, 0);
            let ci = self.int(c);
            let term = self.mul(&ci, &self.powi(pi, e.1));
            acc = self.add(&acc, &term);
        }
        acc
    }

    /// Evaluates a Scalar at real λ, with π̂ the circle constant.
    pub fn scalar(&mut self, x: &Scalar, lambda: &BigRational, pi: &BigFloat) -> Result<BigFloat> {
        let y = x.subst_lambda(lambda)?;
        let n = self.eval_poly_pi(y.numer(), pi);
        let d = self.eval_poly_pi(y.denom(), pi);
        Ok(self.div(&n, &d))
    }

    pub fn trig(&mut self, p: &TrigPoly, at: &TrigPoint) -> Result<BigFloat> {
        let mut acc = self.zero();
        for (e, k) in p.terms() {
            let coeff = self.scalar(k, &at.lambda, &at.pi)?;
            let mut m = self.mul(&self.powi(&at.s, e.s), &self.powi(&at.t, e.t));
            if e.c == 1 {
                m = self.mul(&m, &at.c);
            }
            acc = self.add(&acc, &self.mul(&coeff, &m));
        }
        Ok(acc)
    }

    /// Decimal rendering with `digits` significant digits, scientific notation.
    pub fn format(&mut self, x: &BigFloat, digits: usize) -> String {
        format_sig(x, digits, &mut self.cc)
    }
}

fn format_sig(x: &BigFloat, digits: usize, cc: &mut Consts) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let raw = match x.format(Radix::Dec, RoundingMode::ToEven, cc) {
        Ok(s) => s,
        Err(_) => return "NaN".into(),
    };
    // astro-float renders as "[-]d.ddddde[+-]x".
    let (mant, exp) = match raw.split_once('e') {
        Some((m, e)) => (m.to_string(), e.parse::<i64>().unwrap_or(0)),
        None => (raw.clone(), 0),
    };
    let neg = mant.starts_with('-');
    let ds: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let ds = ds.trim_start_matches('0');
    let lead_zeros = mant
        .chars()
        .filter(|c| c.is_ascii_digit() || *c == '.')
        .take_while(|c| *c == '0' || *c == '.')
        .filter(|c| *c == '0')
        .count() as i64;
    let int_digits = mant
        .trim_start_matches('-')
        .split('.')
        .next()
        .map(|s| s.len() as i64)
        .unwrap_or(1);
    let exp10 = exp + int_digits - 1 - lead_zeros;
    let keep: String = ds.chars().take(digits.max(1)).collect();
    let keep = if keep.is_empty() { "0".to_string() } else { keep };
    let (head, tail) = keep.split_at(1);
    let body = if tail.is_empty() {
        head.to_string()
    } else {
        format!("{head}.{tail}")
    };
    format!("{}{}e{}", if neg { "-" } else { "" }, body, exp10)
}

/// |x| < 10^(−k).
pub fn below_exp10(ctx: &NumCtx, x: &BigFloat, k: u32) -> bool {
    let ten = BigFloat::from_i32(10, ctx.prec);
    let tol = ctx.div(&ctx.one(), &ctx.powi(&ten, k));
    x.abs().cmp(&tol).map(|o| o < 0).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn cos_is_one_when_flat() {
        let mut ctx = NumCtx::with_digits(40);
        let t = ctx.parse_decimal("5").unwrap();
        let pt = ctx.trig_point(&rat(0, 1), &t);
        let v = ctx.trig(&TrigPoly::c(), &pt).unwrap();
        assert!(below_exp10(&ctx, &ctx.sub(&v, &ctx.one()), 35));
    }

    #[test]
    fn sin_at_quarter_period() {
        let mut ctx = NumCtx::with_digits(40);
        let pi = ctx.pi();
        let t = ctx.div(&pi, &BigFloat::from_i32(2, ctx.precision_bits()));
        let pt = ctx.trig_point(&rat(1, 1), &t);
        let v = ctx.trig(&TrigPoly::s(), &pt).unwrap();
        assert!(below_exp10(&ctx, &ctx.sub(&v, &ctx.one()), 35));
    }

    #[test]
    fn pythagorean_relation_numerically() {
        let mut ctx = NumCtx::with_digits(40);
        for (p, q) in [(4, 1), (-3, 2), (1, 7)] {
            let lam = rat(p, q);
            let t = ctx.parse_decimal("0.8125").unwrap();
            let pt = ctx.trig_point(&lam, &t);
            let c2 = ctx.mul(&pt.c, &pt.c);
            let s2 = ctx.mul(&pt.s, &pt.s);
            let lr = ctx.rational(&lam);
            let ls2 = ctx.mul(&lr, &s2);
            let defect = ctx.sub(&ctx.add(&c2, &ls2), &ctx.one());
            assert!(below_exp10(&ctx, &defect, 30));
        }
    }

    #[test]
    fn lambda_denominator_at_zero_errors() {
        let mut ctx = NumCtx::with_digits(30);
        let p = TrigPoly::constant(Scalar::one() / Scalar::lambda());
        let t = ctx.one();
        let pt = ctx.trig_point(&rat(0, 1), &t);
        assert_eq!(ctx.trig(&p, &pt).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn formatting() {
        let mut ctx = NumCtx::with_digits(30);
        let x = ctx.parse_decimal("-0.00123456").unwrap();
        assert_eq!(ctx.format(&x, 4), "-1.234e-3");
        let y = ctx.parse_decimal("1234.5").unwrap();
        assert_eq!(ctx.format(&y, 3), "1.23e3");
    }
}

//! The coefficient field ℚ(λ, π̂).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use serde_json::Value;

use super::json;
use super::poly::{self, Poly};
use super::ring::{Field, Ring};
use crate::error::{Error, Result};

/// Reduced fraction `num / den` with `gcd(num, den) = 1`, coprime integer
/// contents, and a positive lex-leading coefficient in `den`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Scalar::from_bigint(BigInt::from(c))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        Scalar {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Scalar::from_polys(Poly::constant(p.into()), Poly::constant(q.into()))
            .expect("nonzero denominator")
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Scalar::from_polys(
            Poly::constant(q.numer().clone()),
            Poly::constant(q.denom().clone()),
        )
        .expect("rational has nonzero denominator")
    }

    /// The curvature parameter λ.
    pub fn lambda() -> Self {
        Scalar {
            num: Poly::monomial(BigInt::one(), (1, 0)),
            den: Poly::one(),
        }
    }

    /// The formal circle constant π̂.
    pub fn pi() -> Self {
        Scalar {
            num: Poly::monomial(BigInt::one(), (0, 1)),
            den: Poly::one(),
        }
    }

    /// `c · λ^a · π̂^b` with integer exponents.
    pub fn monomial(c: BigRational, lam: i32, pi: i32) -> Self {
        Scalar::from_rational(&c) * Scalar::lambda().powi(lam) * Scalar::pi().powi(pi)
    }

    pub fn from_polys(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        let (mut num, mut den) = if den.is_one() {
            (num, den)
        } else {
            let g = poly::gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        if poly::leading_is_negative(&den) {
            num = num.neg();
            den = den.neg();
        }
        Scalar { num, den }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is free of λ.
    pub fn is_polynomial_in_lambda(&self) -> bool {
        self.den.degree(poly::Var::Lambda) == 0
    }

    /// Rational constant value, if the scalar involves neither λ nor π̂.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(BigRational::new(n, d))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Scalar::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Self> {
        let inv = o.inv().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }

    pub fn powi(&self, k: i32) -> Self {
        if k < 0 {
            let inv = self.inv().expect("negative power of zero");
            return inv.powi(-k);
        }
        let mut r = Scalar::one();
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Substitutes λ = `value`, leaving π̂ formal.
    pub fn subst_lambda(&self, value: &BigRational) -> Result<Self> {
        let (n, nd) = subst_poly(&self.num, value);
        let (d, dd) = subst_poly(&self.den, value);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Scalar::from_polys(n.scale(&dd), d.scale(&nd))
    }

    /// Value when λ and π̂ both specialize to rationals.
    pub fn eval_rational(&self, lambda: &BigRational, pi: &BigRational) -> Result<BigRational> {
        let ev = |p: &Poly| -> BigRational {
            p.terms()
                .iter()
                .map(|(e, c)| {
                    BigRational::from_integer(c.clone())
                        * pow_rat(lambda, e.0)
                        * pow_rat(pi, e.1)
                })
                .fold(BigRational::zero(), |a, b| a + b)
        };
        let d = ev(&self.den);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ev(&self.num) / d)
    }

    /// Multiplies by `λ^a π̂^b` without a gcd pass on the denominator side.
    pub fn mul_monomial(&self, lam: u32, pi: u32) -> Self {
        if self.is_zero() {
            return Scalar::zero();
        }
        Scalar::reduce(poly::shift_monomial(&self.num, (lam, pi)), self.den.clone())
    }
}

fn pow_rat(x: &BigRational, k: u32) -> BigRational {
    let mut r = BigRational::one();
    for _ in 0..k {
        r *= x;
    }
    r
}

/// Returns `(P, D)` with `p(λ = v) = P / D`, `P` free of λ.
fn subst_poly(p: &Poly, v: &BigRational) -> (Poly, BigInt) {
    let top = p.degree(poly::Var::Lambda);
    let (a, b) = (v.numer(), v.denom());
    let mut out = Poly::zero();
    for (e, c) in p.terms() {
        let coeff = c * a.pow(e.0) * b.pow(top - e.0);
        out = out.add(&Poly::monomial(coeff, (0, e.1)));
    }
    (out, b.pow(top))
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Scalar::reduce(self.num.add(&o.num), self.den.clone());
        }
        let g = poly::gcd(&self.den, &o.den);
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = o.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&b).add(&o.num.mul(&a));
        Scalar::reduce(num, self.den.mul(&b))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar {
                num: self.num.mul(&o.num),
                den: Poly::one(),
            };
        }
        let g1 = poly::gcd(&self.num, &o.den);
        let g2 = poly::gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = o.den.div_exact(&g1).expect("gcd divides");
        let n2 = o.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let mut num = n1.mul(&n2);
        let mut den = d1.mul(&d2);
        if poly::leading_is_negative(&den) {
            num = num.neg();
            den = den.neg();
        }
        Scalar { num, den }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self.checked_div(o).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t {
                <&$t as $tr<&$t>>::$m(&self, &o)
            }
        }
        impl<'a> $tr<&'a $t> for $t {
            type Output = $t;
            fn $m(self, o: &$t) -> $t {
                <&$t as $tr<&$t>>::$m(&self, o)
            }
        }
        impl<'a> $tr<$t> for &'a $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t {
                <&$t as $tr<&$t>>::$m(self, &o)
            }
        }
    };
}

forward_owned!(Scalar, Add, add);
forward_owned!(Scalar, Sub, sub);
forward_owned!(Scalar, Mul, mul);
forward_owned!(Scalar, Div, div);

impl From<i64> for Scalar {
    fn from(c: i64) -> Self {
        Scalar::from_int(c)
    }
}

impl Ring for Scalar {
    const KIND: &'static str = "scalar";

    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_scalar(s: Scalar) -> Self {
        s
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
    fn to_json(&self) -> Value {
        json::scalar_to_json(self)
    }
    fn from_json(v: &Value) -> Result<Self> {
        json::scalar_from_json(v)
    }
}

impl Field for Scalar {
    fn inv(&self) -> Option<Self> {
        Scalar::inv(self)
    }
}

fn fmt_poly(p: &Poly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (i, (e, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        let mut parts: Vec<String> = Vec::new();
        if !mag.is_one() || (e.0 == 0 && e.1 == 0) {
            parts.push(mag.to_string());
        }
        match e.0 {
            0 => {}
            1 => parts.push("lam".into()),
            k => parts.push(format!("lam^{k}")),
        }
        match e.1 {
            0 => {}
            1 => parts.push("pi".into()),
            k => parts.push(format!("pi^{k}")),
        }
        write!(f, "{}", parts.join("*"))?;
    }
    Ok(())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compound_num = self.num.terms().len() > 1;
        if self.den.is_one() {
            return fmt_poly(&self.num, f);
        }
        if compound_num {
            write!(f, "(")?;
            fmt_poly(&self.num, f)?;
            write!(f, ")")?;
        } else {
            fmt_poly(&self.num, f)?;
        }
        write!(f, "/")?;
        // a product in the denominator needs parentheses to parse back
        let den = PolyDisplay(&self.den).to_string();
        if self.den.terms().len() > 1 || den.contains('*') {
            write!(f, "({den})")
        } else {
            write!(f, "{den}")
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

struct PolyDisplay<'a>(&'a Poly);

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(self.0, f)
    }
}

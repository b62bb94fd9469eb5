//! Sparse bivariate polynomials over ℤ in the formal variables λ and π̂.
//!
//! Terms are keyed by `(λ-power, π̂-power)`; the map order is lexicographic
//! with λ dominant, so the last entry is the lex-leading term. The gcd is a
//! recursive primitive-remainder-sequence gcd, with λ as main variable and
//! coefficients in ℤ[π̂].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Exp = (u32, u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Lambda,
    Pi,
}

impl Var {
    fn of(self, e: Exp) -> u32 {
        match self {
            Var::Lambda => e.0,
            Var::Pi => e.1,
        }
    }

    fn shift(self, e: Exp, by: u32) -> Exp {
        match self {
            Var::Lambda => (e.0 + by, e.1),
            Var::Pi => (e.0, e.1 + by),
        }
    }

    fn strip(self, e: Exp) -> Exp {
        match self {
            Var::Lambda => (0, e.1),
            Var::Pi => (e.0, 0),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Exp, BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::monomial(c, (0, 0))
    }

    pub fn monomial(c: BigInt, e: Exp) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Poly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Exp, BigInt)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<Exp, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Exp, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self, v: Var) -> u32 {
        self.terms.keys().map(|&e| v.of(e)).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Exp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, -c);
        }
        r
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut r = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                r.add_term((ea.0 + eb.0, ea.1 + eb.1), ca * cb);
            }
        }
        r
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::one();
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    fn shift(&self, e: Exp) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| ((k.0 + e.0, k.1 + e.1), c.clone()))
                .collect(),
        }
    }

    fn unshift(&self, e: Exp) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| ((k.0 - e.0, k.1 - e.1), c.clone()))
                .collect(),
        }
    }

    fn div_int_exact(&self, c: &BigInt) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, x)| (*e, x / c)).collect(),
        }
    }

    /// Nonnegative gcd of the integer coefficients.
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_exps(&self) -> Exp {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(e) => *e,
            None => return (0, 0),
        };
        it.fold(first, |m, e| (m.0.min(e.0), m.1.min(e.1)))
    }

    fn leading_positive(self) -> Poly {
        match self.leading() {
            Some((_, c)) if c.is_negative() => self.neg(),
            _ => self,
        }
    }

    /// Exact division; `None` when `d` does not divide `self` in ℤ[λ, π̂].
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if d.is_monomial() {
            let (ed, cd) = d.leading().map(|(e, c)| (*e, c.clone()))?;
            let mut q = Poly::zero();
            for (e, c) in &self.terms {
                if e.0 < ed.0 || e.1 < ed.1 {
                    return None;
                }
                let (quo, rem) = c.div_rem(&cd);
                if !rem.is_zero() {
                    return None;
                }
                q.terms.insert((e.0 - ed.0, e.1 - ed.1), quo);
            }
            return Some(q);
        }
        let (ed, cd) = d.leading().map(|(e, c)| (*e, c.clone()))?;
        let mut q = Poly::zero();
        let mut r = self.clone();
        while let Some((er, cr)) = r.leading().map(|(e, c)| (*e, c.clone())) {
            if er.0 < ed.0 || er.1 < ed.1 {
                return None;
            }
            let (quo, rem) = cr.div_rem(&cd);
            if !rem.is_zero() {
                return None;
            }
            let t = Poly::monomial(quo, (er.0 - ed.0, er.1 - ed.1));
            r = r.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Coefficient of `v^deg`, as a polynomial free of `v`.
    fn coeff_in(&self, v: Var, deg: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| v.of(**e) == deg)
                .map(|(e, c)| (v.strip(*e), c.clone()))
                .collect(),
        }
    }

    fn coeffs_in(&self, v: Var) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(v.of(*e))
                .or_default()
                .terms
                .insert(v.strip(*e), c.clone());
        }
        out
    }

    fn mul_var(&self, v: Var, k: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (v.shift(*e, k), c.clone()))
                .collect(),
        }
    }

    pub fn eval_int_point(&self, lam: &BigInt, pi: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(e, c)| c * lam.pow(e.0) * pi.pow(e.1))
            .sum()
    }
}

fn monomial_gcd(a: &Poly, b: &Poly) -> Poly {
    let c = a.content().gcd(&b.content());
    let (ma, mb) = (a.min_exps(), b.min_exps());
    Poly::monomial(c, (ma.0.min(mb.0), ma.1.min(mb.1)))
}

/// Splits off the largest monomial factor with positive integer coefficient.
fn split_monomial(p: &Poly) -> (Poly, Poly) {
    let c = p.content();
    let e = p.min_exps();
    let rest = p.unshift(e).div_int_exact(&c);
    (Poly::monomial(c, e), rest)
}

fn content_wrt(p: &Poly, v: Var) -> Poly {
    let mut g = Poly::zero();
    for c in p.coeffs_in(v).values() {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part_wrt(p: &Poly, v: Var) -> Poly {
    let c = content_wrt(p, v);
    if c.is_one() {
        return p.clone();
    }
    p.div_exact(&c).expect("content divides polynomial")
}

fn pseudo_rem(a: &Poly, b: &Poly, v: Var) -> Poly {
    let db = b.degree(v);
    let lb = b.coeff_in(v, db);
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree(v);
        if dr < db {
            break;
        }
        let lr = r.coeff_in(v, dr);
        r = r.mul(&lb).sub(&b.mul(&lr).mul_var(v, dr - db));
    }
    r
}

/// Gcd of two polynomials primitive with respect to `v`.
fn prs_gcd(a: &Poly, b: &Poly, v: Var) -> Poly {
    let (mut a, mut b) = if a.degree(v) >= b.degree(v) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    loop {
        if b.is_zero() {
            return primitive_part_wrt(&a, v).leading_positive();
        }
        if b.degree(v) == 0 {
            return Poly::one();
        }
        let r = pseudo_rem(&a, &b, v);
        a = b;
        b = if r.is_zero() {
            r
        } else {
            primitive_part_wrt(&r, v)
        };
    }
}

/// Greatest common divisor in ℤ[λ, π̂], normalized to a positive leading
/// coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone().leading_positive();
    }
    if b.is_zero() {
        return a.clone().leading_positive();
    }
    if a.is_monomial() || b.is_monomial() {
        return monomial_gcd(a, b);
    }
    let (ma, a1) = split_monomial(a);
    let (mb, b1) = split_monomial(b);
    let m = monomial_gcd(&ma, &mb);
    if a1 == b1 {
        return m.mul(&a1).leading_positive();
    }
    let v = if a1.degree(Var::Lambda) > 0 || b1.degree(Var::Lambda) > 0 {
        Var::Lambda
    } else {
        Var::Pi
    };
    let ca = content_wrt(&a1, v);
    let cb = content_wrt(&b1, v);
    let c = gcd(&ca, &cb);
    let pa = a1.div_exact(&ca).expect("content divides");
    let pb = b1.div_exact(&cb).expect("content divides");
    let g = if pa.degree(v) == 0 || pb.degree(v) == 0 {
        Poly::one()
    } else {
        prs_gcd(&pa, &pb, v)
    };
    m.mul(&c).mul(&g).leading_positive()
}

/// Leading coefficient sign, used to normalize denominators.
pub(crate) fn leading_is_negative(p: &Poly) -> bool {
    p.leading().is_some_and(|(_, c)| c.is_negative())
}

pub(crate) fn shift_monomial(p: &Poly, e: Exp) -> Poly {
    p.shift(e)
}

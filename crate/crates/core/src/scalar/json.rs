//! Canonical JSON encodings of the scalar types.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::field::Scalar;
use super::poly::Poly;
use super::rho::RhoScalar;
use super::trig::TrigPoly;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct TermJson {
    lam_pow: u32,
    pi_pow: u32,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct ScalarJson {
    num: Vec<TermJson>,
    den: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TrigTermJson {
    s_pow: u32,
    c_pow: u32,
    t_pow: u32,
    scalar: Value,
}

#[derive(Serialize, Deserialize)]
struct RhoJson {
    re: Value,
    rho: Value,
}

fn poly_to_terms(p: &Poly) -> Vec<TermJson> {
    p.terms()
        .iter()
        .map(|(e, c)| TermJson {
            lam_pow: e.0,
            pi_pow: e.1,
            coeff: c.to_string(),
        })
        .collect()
}

fn poly_from_terms(ts: &[TermJson]) -> Result<Poly> {
    let mut p = Poly::zero();
    for t in ts {
        let c = BigInt::from_str(&t.coeff)
            .map_err(|_| Error::Parse(format!("bad integer coefficient {:?}", t.coeff)))?;
        p = p.add(&Poly::monomial(c, (t.lam_pow, t.pi_pow)));
    }
    Ok(p)
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    let j = ScalarJson {
        num: poly_to_terms(s.numer()),
        den: poly_to_terms(s.denom()),
    };
    serde_json::to_value(j).expect("scalar JSON is serializable")
}

pub fn scalar_from_json(v: &Value) -> Result<Scalar> {
    let j: ScalarJson = serde_json::from_value(v.clone())?;
    Scalar::from_polys(poly_from_terms(&j.num)?, poly_from_terms(&j.den)?)
}

pub fn trig_to_json(p: &TrigPoly) -> Value {
    let terms: Vec<TrigTermJson> = p
        .terms()
        .iter()
        .map(|(e, c)| TrigTermJson {
            s_pow: e.s,
            c_pow: e.c,
            t_pow: e.t,
            scalar: scalar_to_json(c),
        })
        .collect();
    serde_json::to_value(terms).expect("trig JSON is serializable")
}

pub fn trig_from_json(v: &Value) -> Result<TrigPoly> {
    let terms: Vec<TrigTermJson> = serde_json::from_value(v.clone())?;
    let mut out = TrigPoly::zero();
    for t in terms {
        let c = scalar_from_json(&t.scalar)?;
        out = out.add(&TrigPoly::term(c, t.s_pow, t.c_pow, t.t_pow));
    }
    Ok(out)
}

pub fn rho_to_json(r: &RhoScalar) -> Value {
    serde_json::to_value(RhoJson {
        re: scalar_to_json(&r.re),
        rho: scalar_to_json(&r.rho),
    })
    .expect("rho JSON is serializable")
}

pub fn rho_from_json(v: &Value) -> Result<RhoScalar> {
    let j: RhoJson = serde_json::from_value(v.clone())?;
    Ok(RhoScalar::new(
        scalar_from_json(&j.re)?,
        scalar_from_json(&j.rho)?,
    ))
}

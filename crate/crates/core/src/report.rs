//! JSON conventions shared by every machine-readable output.
//!
//! Exact values are strings (`"5/2"`, `"-3"`), floats are written with 17
//! significant digits and non-finite floats become `null`.

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::ratpoly::{render, Poly, Rational};

pub const SCHEMA_VERSION: &str = "1.0";

pub fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&render(r))
}

pub fn ser_rationals<S: Serializer>(rs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(rs.len()))?;
    for r in rs {
        seq.serialize_element(&render(r))?;
    }
    seq.end()
}

pub fn ser_opt_rational<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&render(r)),
        None => s.serialize_none(),
    }
}

/// Polynomial as its coefficient list, constant term first.
pub fn ser_poly<S: Serializer>(p: &Poly, s: S) -> Result<S::Ok, S::Error> {
    ser_rationals(p.coeffs(), s)
}

/// Text of a float with 17 significant digits, or `null`.
pub fn float_text(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

pub fn ser_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    let raw = RawValue::from_string(float_text(*x)).map_err(serde::ser::Error::custom)?;
    raw.serialize(s)
}

pub fn ser_f64s<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        let raw = RawValue::from_string(float_text(*x)).map_err(serde::ser::Error::custom)?;
        seq.serialize_element(&raw)?;
    }
    seq.end()
}

pub fn ser_f64_matrix<S: Serializer>(rows: &[Vec<f64>], s: S) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Row<'a>(#[serde(serialize_with = "ser_f64s")] &'a [f64]);
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for r in rows {
        seq.serialize_element(&Row(r))?;
    }
    seq.end()
}

pub fn ser_opt_f64<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => ser_f64(x, s),
        None => s.serialize_none(),
    }
}

/// Wraps a payload with the top-level `schema_version` field.
#[derive(Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub schema_version: &'static str,
    pub kind: &'a str,
    #[serde(flatten)]
    pub payload: &'a T,
}

pub fn to_json<T: Serialize>(kind: &str, payload: &T) -> String {
    let env = Envelope {
        schema_version: SCHEMA_VERSION,
        kind,
        payload,
    };
    serde_json::to_string_pretty(&env).expect("serializable report")
}

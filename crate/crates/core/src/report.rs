//! JSON shapes for exact numbers and verdict lists.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

pub const SCHEMA: &str = "1";
const DISPLAY_DIGITS: usize = 12;

/// Decimal expansion, exact when it terminates within the display budget.
pub fn decimal_string(q: &BigRational) -> String {
    let sign = if q.is_negative() { "-" } else { "" };
    let num = q.numer().abs();
    let den = q.denom().clone();
    let (int, mut rem) = num.div_rem(&den);
    if rem.is_zero() {
        return format!("{sign}{int}");
    }
    let mut digits = String::new();
    let ten = BigInt::from(10);
    while !rem.is_zero() && digits.len() < DISPLAY_DIGITS {
        rem *= &ten;
        let (d, r) = rem.div_rem(&den);
        digits.push_str(&d.to_string());
        rem = r;
    }
    let tail = if rem.is_zero() { "" } else { "..." };
    format!("{sign}{int}.{digits}{tail}")
}

pub fn rational_json(q: &BigRational) -> Value {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string(), "display": decimal_string(q) })
}

pub fn serialize_rational<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    let mut st = s.serialize_struct("Rational", 3)?;
    st.serialize_field("num", &q.numer().to_string())?;
    st.serialize_field("den", &q.denom().to_string())?;
    st.serialize_field("display", &decimal_string(q))?;
    st.end()
}

pub fn serialize_rationals<S: Serializer>(qs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(qs.iter().map(rational_json))
}

pub fn serialize_integer<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

pub fn serialize_integers<S: Serializer>(ns: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(ns.iter().map(|n| n.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub verdict: Outcome,
    pub detail: Value,
}

impl Verdict {
    pub fn new(check: impl Into<String>, pass: bool, detail: Value) -> Self {
        Verdict { check: check.into(), verdict: if pass { Outcome::Pass } else { Outcome::Fail }, detail }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Outcome::Pass
    }
}

/// `{"schema": "1", "command": ..., "verdicts": [...], "data": ...}`
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub verdicts: Vec<Verdict>,
    pub data: Value,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { schema: SCHEMA, command: command.into(), verdicts: Vec::new(), data: Value::Null }
    }

    pub fn push(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(Verdict::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn decimals() {
        assert_eq!(decimal_string(&rat(-3, 2)), "-1.5");
        assert_eq!(decimal_string(&rat(1, 3)), "0.333333333333...");
        assert_eq!(decimal_string(&rat(7, 1)), "7");
        assert_eq!(decimal_string(&rat(-1, 4)), "-0.25");
        assert_eq!(rational_json(&rat(1, 2))["den"], "2");
    }
}

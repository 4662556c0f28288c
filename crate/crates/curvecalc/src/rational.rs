//! Exact rational helpers and the `{num, den}` JSON encoding.

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Q = Rational64;

/// Integer value of `q`, or `None` when `q` has a nontrivial denominator.
pub fn to_int(q: Q) -> Option<i64> {
    if *q.denom() == 1 {
        Some(*q.numer())
    } else {
        None
    }
}

pub fn floor_div(a: i64, b: i64) -> i64 {
    Integer::div_floor(&a, &b)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn qmax(a: Q, b: Q) -> Q {
    if a >= b {
        a
    } else {
        b
    }
}

#[derive(Serialize, Deserialize)]
struct Raw {
    num: i64,
    den: i64,
}

pub fn serialize<S: Serializer>(q: &Q, s: S) -> Result<S::Ok, S::Error> {
    Raw {
        num: *q.numer(),
        den: *q.denom(),
    }
    .serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
    let raw = Raw::deserialize(d)?;
    if raw.den == 0 {
        return Err(serde::de::Error::custom("rational with zero denominator"));
    }
    Ok(Q::new(raw.num, raw.den))
}

/// Display form `p/q`, or `p` when integral.
pub fn fmt(q: Q) -> String {
    if *q.denom() == 1 {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parse `p/q` or `p`.
pub fn parse(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let num: i64 = a.trim().parse().ok()?;
            let den: i64 = b.trim().parse().ok()?;
            (den != 0).then(|| Q::new(num, den))
        }
        None => s.parse::<i64>().ok().map(Q::from_integer),
    }
}

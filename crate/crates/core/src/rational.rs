//! Exact rational scalars and their string encoding.
//!
//! Rationals travel through JSON as strings `"p/q"`, or `"p"` when the
//! denominator is one.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub use num_rational::BigRational as Rational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => BigInt::from_str(t)
            .map(Rational::from_integer)
            .map_err(|_| bad()),
    }
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn is_positive(q: &Rational) -> bool {
    q.is_positive()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// A rational that (de)serializes through the string form; handy inside
/// nested containers.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct Rat(#[serde(with = "serde_rat")] pub Rational);

pub fn unwrap_rats(v: &[Rat]) -> Vec<Rational> {
    v.iter().map(|r| r.0.clone()).collect()
}

/// Serde adapters for the string encoding.
pub mod serde_rat {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = RawRational::deserialize(d)?;
        raw.into_rational().map_err(de::Error::custom)
    }

    /// Accepts `"3/4"` as well as bare JSON integers.
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum RawRational {
        Text(String),
        Int(i64),
    }

    impl RawRational {
        fn into_rational(self) -> Result<Rational, Error> {
            match self {
                RawRational::Text(s) => parse_rational(&s),
                RawRational::Int(n) => Ok(int(n)),
            }
        }
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for q in v {
                seq.serialize_element(&format_rational(q))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let raw = Vec::<RawRational>::deserialize(d)?;
            raw.into_iter()
                .map(|r| r.into_rational().map_err(de::Error::custom))
                .collect()
        }
    }

    pub mod vec2 {
        use super::*;

        #[derive(serde::Serialize, Deserialize)]
        #[serde(transparent)]
        struct Row(#[serde(with = "super::vec")] Vec<Rational>);

        pub fn serialize<S: Serializer>(v: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
            use serde::Serialize;
            let rows: Vec<Row> = v.iter().cloned().map(Row).collect();
            rows.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> Result<Vec<Vec<Rational>>, D::Error> {
            Ok(Vec::<Row>::deserialize(d)?
                .into_iter()
                .map(|r| r.0)
                .collect())
        }
    }
}

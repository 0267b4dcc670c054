//! Serde adapters that write arbitrary-precision numbers as decimal strings.
//!
//! Readers also accept plain JSON integers that fit in 64 bits.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::polyring::Rational;

#[derive(Deserialize)]
#[serde(untagged)]
enum Token {
    Str(String),
    Signed(i64),
    Unsigned(u64),
}

impl Token {
    fn into_string(self) -> String {
        match self {
            Token::Str(s) => s,
            Token::Signed(i) => i.to_string(),
            Token::Unsigned(u) => u.to_string(),
        }
    }
}

/// Parses a decimal integer, tolerating surrounding whitespace and a leading `+`.
pub fn parse_int(s: &str) -> Result<BigInt, String> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    BigInt::from_str(t).map_err(|_| format!("not a decimal integer: {s:?}"))
}

/// Parses `p/q` or a plain integer.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d == BigInt::from(0) {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

pub mod int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        parse_int(&Token::deserialize(d)?.into_string()).map_err(D::Error::custom)
    }
}

pub mod uint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let v = parse_int(&Token::deserialize(d)?.into_string()).map_err(D::Error::custom)?;
        v.to_biguint()
            .ok_or_else(|| D::Error::custom("expected a nonnegative integer"))
    }
}

pub mod int_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Token>::deserialize(d)?
            .into_iter()
            .map(|t| parse_int(&t.into_string()).map_err(D::Error::custom))
            .collect()
    }
}

pub mod ratio {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        parse_rational(&Token::deserialize(d)?.into_string()).map_err(D::Error::custom)
    }
}

/// Newtype carrying a `BigInt` that serializes as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dec(#[serde(with = "int")] pub BigInt);

/// Newtype carrying a `Rational` that serializes as `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecRatio(#[serde(with = "ratio")] pub Rational);

//! JSON encoding of exact rationals as `[num, den]` pairs.
//!
//! Components that fit in an `i64` are written as JSON numbers; larger ones
//! fall back to decimal strings. Both forms are accepted on input.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Big(String),
}

impl IntRepr {
    fn from_big(x: &BigInt) -> Self {
        match x.to_i64() {
            Some(v) => IntRepr::Small(v),
            None => IntRepr::Big(x.to_string()),
        }
    }

    fn into_big(self) -> Result<BigInt, String> {
        match self {
            IntRepr::Small(v) => Ok(BigInt::from(v)),
            IntRepr::Big(s) => s.parse().map_err(|_| format!("not an integer: {s:?}")),
        }
    }
}

/// A rational serialized as `[num, den]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalJson(pub BigRational);

impl Serialize for RationalJson {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [IntRepr::from_big(self.0.numer()), IntRepr::from_big(self.0.denom())].serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [n, den] = <[IntRepr; 2]>::deserialize(d)?;
        let n = n.into_big().map_err(serde::de::Error::custom)?;
        let den = den.into_big().map_err(serde::de::Error::custom)?;
        if den.is_zero() {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(RationalJson(BigRational::new(n, den)))
    }
}

/// Human-friendly rational: `"3"`, `"-1/2"`.
pub fn rational_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_components_use_strings() {
        let big = BigInt::from(10).pow(30);
        let r = RationalJson(BigRational::new(big, BigInt::from(7)));
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.starts_with("[\"1000"));
        let back: RationalJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("-3/6"), Some(BigRational::new((-1).into(), 2.into())));
        assert_eq!(parse_rational("4"), Some(BigRational::from_integer(4.into())));
        assert_eq!(parse_rational("1/0"), None);
    }
}

//! Exact rationals and their JSON form.
//!
//! Rationals serialize as a JSON integer when the denominator is one and as
//! a `"p/q"` string otherwise. Parsing also accepts finite JSON floats, which
//! are converted exactly.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Ratio = BigRational;

pub fn int(n: i64) -> Ratio {
    Ratio::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Ratio {
    Ratio::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_f64(x: f64) -> Ratio {
    Ratio::from_float(x).expect("finite float")
}

pub fn to_f64(r: &Ratio) -> f64 {
    match r.to_f64() {
        Some(x) => x,
        None => {
            // fall back on a scaled quotient when numerator/denominator overflow
            let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
            let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
            n / d
        }
    }
}

pub fn floor_u64(r: &Ratio) -> u64 {
    r.floor().to_integer().to_u64().expect("nonnegative and in range")
}

pub fn ceil_u64(r: &Ratio) -> u64 {
    r.ceil().to_integer().to_u64().expect("nonnegative and in range")
}

pub fn format(r: &Ratio) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse(s: &str) -> Option<Ratio> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Ratio::new(n, d))
    } else if let Ok(n) = s.parse::<BigInt>() {
        Some(Ratio::from_integer(n))
    } else {
        let x: f64 = s.parse().ok()?;
        Ratio::from_float(x)
    }
}

/// JSON wrapper around [`Ratio`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct JsonRatio(pub Ratio);

impl fmt::Display for JsonRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format(&self.0))
    }
}

impl Serialize for JsonRatio {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.denom().is_one() {
            if let Some(n) = self.0.numer().to_i64() {
                return s.serialize_i64(n);
            }
        }
        s.serialize_str(&format(&self.0))
    }
}

impl<'de> Deserialize<'de> for JsonRatio {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = JsonRatio;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer, a float or a \"p/q\" string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonRatio, E> {
                Ok(JsonRatio(int(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonRatio, E> {
                Ok(JsonRatio(Ratio::from_integer(BigInt::from(v))))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<JsonRatio, E> {
                Ratio::from_float(v)
                    .map(JsonRatio)
                    .ok_or_else(|| E::custom("non-finite number"))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonRatio, E> {
                parse(v)
                    .map(JsonRatio)
                    .ok_or_else(|| E::custom(format!("bad rational {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

pub fn is_nonnegative(r: &Ratio) -> bool {
    !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        for r in [int(3), frac(4, 5), frac(-7, 2), int(0)] {
            let s = serde_json::to_string(&JsonRatio(r.clone())).unwrap();
            let back: JsonRatio = serde_json::from_str(&s).unwrap();
            assert_eq!(back.0, r);
        }
        assert_eq!(serde_json::to_string(&JsonRatio(frac(4, 5))).unwrap(), "\"4/5\"");
        assert_eq!(serde_json::to_string(&JsonRatio(int(5))).unwrap(), "5");
        let half: JsonRatio = serde_json::from_str("0.5").unwrap();
        assert_eq!(half.0, frac(1, 2));
    }
}

//! Serde helpers writing big integers as plain JSON numbers.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{Number, Value};

pub(crate) fn to_number(n: &BigInt) -> Number {
    Number::from_str(&n.to_string()).expect("integers are valid JSON numbers")
}

pub(crate) fn parse_int(v: &Value) -> Result<BigInt, String> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(format!("expected integer, got {other}")),
    };
    BigInt::from_str(&text).map_err(|e| format!("bad integer {text}: {e}"))
}

fn from_value<E: serde::de::Error>(v: &Value) -> Result<BigInt, E> {
    parse_int(v).map_err(E::custom)
}

pub mod big {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        to_number(n).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        from_value(&Value::deserialize(d)?)
    }
}

pub mod big_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(to_number).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v = Value::deserialize(d)?;
        let items = v.as_array().ok_or_else(|| D::Error::custom("expected an array"))?;
        items.iter().map(from_value).collect()
    }
}

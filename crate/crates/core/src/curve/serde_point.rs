//! JSON form of points: `"infinity"` or
//! `{"x": [a_num, a_den, b_num, b_den], "y": [...], "d": d}` for
//! `x = a + b sqrt(d)`; integers of any size are written as JSON numbers.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{Number, Value};

use super::Point;
use crate::json::{parse_int, to_number};
use crate::numeric::{QuadFieldElement, Rat};

fn coords(v: &QuadFieldElement) -> [Number; 4] {
    [
        to_number(v.a().numer()),
        to_number(v.a().denom()),
        to_number(v.b().numer()),
        to_number(v.b().denom()),
    ]
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Point::Infinity => s.serialize_str("infinity"),
            Point::Affine { x, y } => {
                let mut m = s.serialize_map(Some(3))?;
                m.serialize_entry("x", &coords(x))?;
                m.serialize_entry("y", &coords(y))?;
                m.serialize_entry("d", &x.d())?;
                m.end()
            }
        }
    }
}

fn parse_coord(v: &Value, d: i64) -> Result<QuadFieldElement, String> {
    let parts = v.as_array().ok_or("coordinate must be an array")?;
    if parts.len() != 4 {
        return Err(format!("coordinate needs 4 integers, got {}", parts.len()));
    }
    let n: Vec<BigInt> = parts.iter().map(parse_int).collect::<Result<_, _>>()?;
    if n[1] == BigInt::from(0) || n[3] == BigInt::from(0) {
        return Err("zero denominator".into());
    }
    let a = Rat::new(n[0].clone(), n[1].clone());
    let b = Rat::new(n[2].clone(), n[3].clone());
    QuadFieldElement::new(d, a, b).map_err(|e| e.to_string())
}

pub(crate) fn point_from_value(v: &Value) -> Result<Point, String> {
    match v {
        Value::String(s) if s == "infinity" => Ok(Point::Infinity),
        Value::Object(m) => {
            let d = m
                .get("d")
                .and_then(Value::as_i64)
                .ok_or("missing integer field d")?;
            let x = parse_coord(m.get("x").ok_or("missing x")?, d)?;
            let y = parse_coord(m.get("y").ok_or("missing y")?, d)?;
            Ok(Point::Affine { x, y })
        }
        other => Err(format!("not a point: {other}")),
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        point_from_value(&v).map_err(D::Error::custom)
    }
}

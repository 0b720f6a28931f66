//! Serde adapters for arbitrary-precision numbers.
//!
//! Integers that fit in an `i64` are written as JSON numbers and anything
//! larger as a decimal string; rationals with a denominator other than one
//! are written as `"p/q"` strings. Both forms are accepted on input.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exact_linalg::{IntMatrix, RatMatrix};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => {
                if let Some(v) = n.as_i64() {
                    Ok(JsonInt(BigInt::from(v)))
                } else if let Some(v) = n.as_u64() {
                    Ok(JsonInt(BigInt::from(v)))
                } else {
                    Err(D::Error::custom(format!("expected an integer, got {n}")))
                }
            }
            serde_json::Value::String(s) => {
                BigInt::from_str(s.trim()).map(JsonInt).map_err(|_| D::Error::custom(format!("invalid integer `{s}`")))
            }
            other => Err(D::Error::custom(format!("expected an integer, got {other}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonRat(pub BigRational);

impl Serialize for JsonRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.denom().is_one() {
            JsonInt(self.0.numer().clone()).serialize(s)
        } else {
            s.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
        }
    }
}

impl<'de> Deserialize<'de> for JsonRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) => {
                parse_rational(&s).map(JsonRat).ok_or_else(|| D::Error::custom(format!("invalid rational `{s}`")))
            }
            other => {
                let JsonInt(n) = JsonInt::deserialize(other).map_err(D::Error::custom)?;
                Ok(JsonRat(BigRational::from_integer(n)))
            }
        }
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => BigInt::from_str(s).ok().map(BigRational::from_integer),
    }
}

pub fn ints(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().cloned().map(JsonInt).collect()
}

pub fn unwrap_ints(v: &[JsonInt]) -> Vec<BigInt> {
    v.iter().map(|x| x.0.clone()).collect()
}

pub fn int_matrix_rows(m: &IntMatrix) -> Vec<Vec<JsonInt>> {
    m.row_vecs().iter().map(|r| ints(r)).collect()
}

/// `ncols` is needed for matrices with zero rows.
pub fn int_matrix_from_rows(rows: &[Vec<JsonInt>], ncols: Option<usize>) -> Result<IntMatrix, String> {
    let ncols = ncols.or_else(|| rows.first().map(Vec::len)).unwrap_or(0);
    let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| unwrap_ints(r)).collect();
    IntMatrix::from_big_rows(&rows, ncols).map_err(|e| e.to_string())
}

pub fn rat_matrix_rows(m: &RatMatrix) -> Vec<Vec<JsonRat>> {
    m.row_vecs().into_iter().map(|r| r.into_iter().map(JsonRat).collect()).collect()
}

pub fn rat_matrix_from_rows(rows: &[Vec<JsonRat>], nrows: usize, ncols: usize) -> Result<RatMatrix, String> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(format!(
            "expected a {nrows}x{ncols} matrix, got {} rows of lengths {:?}",
            rows.len(),
            rows.iter().map(Vec::len).collect::<Vec<_>>()
        ));
    }
    let data = rows.iter().flatten().map(|x| x.0.clone()).collect();
    RatMatrix::from_vec(nrows, ncols, data).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_integers_round_trip_as_strings() {
        let big = BigInt::from(i64::MAX) * BigInt::from(10);
        let s = serde_json::to_string(&JsonInt(big.clone())).unwrap();
        assert_eq!(s, format!("\"{big}\""));
        let back: JsonInt = serde_json::from_str(&s).unwrap();
        assert_eq!(back.0, big);
        let small: JsonInt = serde_json::from_str("-7").unwrap();
        assert_eq!(small.0, BigInt::from(-7));
    }

    #[test]
    fn rationals() {
        let r: JsonRat = serde_json::from_str("\"6/-4\"").unwrap();
        assert_eq!(r.0, BigRational::new(BigInt::from(-3), BigInt::from(2)));
        assert_eq!(serde_json::to_string(&r).unwrap(), "\"-3/2\"");
        let i: JsonRat = serde_json::from_str("\"4/2\"").unwrap();
        assert_eq!(serde_json::to_string(&i).unwrap(), "2");
        assert!(serde_json::from_str::<JsonRat>("\"1/0\"").is_err());
    }
}

//! JSON formats.
//!
//! * complex: `{"m": 9, "facets": [[1,2,3,4,5,6], ...]}`
//! * matrix: `{"rows": 2, "cols": 3, "data": [[1,0,-1],[0,1,-1]]}`; rational
//!   entries may be given as strings `"p/q"`, large integers as decimal strings
//! * subtorus: `{"m": 9, "rows": [[1,0,1,...], ...]}`
//!
//! Integers that fit in `i64` are written as JSON numbers, larger ones as strings.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::linalg::{IntMatrix, RatMatrix};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Invalid {
        path: path.into(),
        message: message.into(),
    }
}

pub fn bigint_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

pub fn ser_bigint_vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&bigint_to_json(x))?;
    }
    seq.end()
}

pub fn matrix_rows_json(a: &IntMatrix) -> Value {
    Value::Array(
        (0..a.rows())
            .map(|i| Value::Array(a.row(i).iter().map(bigint_to_json).collect()))
            .collect(),
    )
}

pub fn ser_matrix_rows<S: Serializer>(a: &IntMatrix, s: S) -> Result<S::Ok, S::Error> {
    matrix_rows_json(a).serialize(s)
}

/// Matrix in the `{"rows", "cols", "data"}` format.
pub fn matrix_to_json(a: &IntMatrix) -> Value {
    serde_json::json!({
        "rows": a.rows(),
        "cols": a.cols(),
        "data": matrix_rows_json(a),
    })
}

pub fn ser_matrix<S: Serializer>(a: &IntMatrix, s: S) -> Result<S::Ok, S::Error> {
    matrix_to_json(a).serialize(s)
}

/// An integer read from a JSON number or decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        parse_int(&v).map(JsonInt).map_err(de::Error::custom)
    }
}

fn parse_int(v: &Value) -> Result<BigInt, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| format!("{n} is not an integer")),
        Value::String(s) => {
            BigInt::from_str(s.trim()).map_err(|_| format!("{s:?} is not an integer"))
        }
        other => Err(format!("expected integer, got {other}")),
    }
}

fn parse_rational(v: &Value) -> Result<BigRational, String> {
    match v {
        Value::String(s) if s.contains('/') => {
            let r =
                BigRational::from_str(s.trim()).map_err(|_| format!("{s:?} is not a rational"))?;
            Ok(r)
        }
        other => parse_int(other).map(BigRational::from_integer),
    }
}

fn matrix_shell(v: &Value) -> Result<(usize, usize, &Vec<Value>), FormatError> {
    let obj = v
        .as_object()
        .ok_or_else(|| invalid("$", "expected a matrix object"))?;
    let dim = |key: &str| -> Result<usize, FormatError> {
        obj.get(key)
            .and_then(Value::as_u64)
            .map(|x| x as usize)
            .ok_or_else(|| invalid(format!("$.{key}"), "expected a non-negative integer"))
    };
    let rows = dim("rows")?;
    let cols = dim("cols")?;
    let data = obj
        .get("data")
        .and_then(Value::as_array)
        .ok_or_else(|| invalid("$.data", "expected an array of rows"))?;
    if data.len() != rows {
        return Err(invalid(
            "$.data",
            format!("expected {rows} rows, found {}", data.len()),
        ));
    }
    for (i, row) in data.iter().enumerate() {
        let len = row.as_array().map(Vec::len);
        if len != Some(cols) {
            return Err(invalid(
                format!("$.data[{i}]"),
                format!("expected {cols} entries"),
            ));
        }
    }
    Ok((rows, cols, data))
}

pub fn int_matrix_from_json(v: &Value) -> Result<IntMatrix, FormatError> {
    let (rows, cols, data) = matrix_shell(v)?;
    let mut out = Vec::with_capacity(rows * cols);
    for (i, row) in data.iter().enumerate() {
        for (j, x) in row.as_array().expect("checked").iter().enumerate() {
            out.push(parse_int(x).map_err(|e| invalid(format!("$.data[{i}][{j}]"), e))?);
        }
    }
    IntMatrix::from_vec(rows, cols, out).map_err(|e| invalid("$", e.to_string()))
}

pub fn rat_matrix_from_json(v: &Value) -> Result<RatMatrix, FormatError> {
    let (rows, cols, data) = matrix_shell(v)?;
    let mut out = Vec::with_capacity(rows * cols);
    for (i, row) in data.iter().enumerate() {
        for (j, x) in row.as_array().expect("checked").iter().enumerate() {
            out.push(parse_rational(x).map_err(|e| invalid(format!("$.data[{i}][{j}]"), e))?);
        }
    }
    RatMatrix::from_vec(rows, cols, out).map_err(|e| invalid("$", e.to_string()))
}

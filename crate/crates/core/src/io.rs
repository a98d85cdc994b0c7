//! JSON input and output for quivers and exchange matrices.
//!
//! Quiver form: `{"n": 3, "weights": [1, 1, 3], "arrows": [[3, 2, 3, 1], ...]}`
//! where an arrow is `[source, target, d_source_target, d_target_source]`;
//! `[source, target, m]` is shorthand for valuation `(m, m)` and `weights`
//! defaults to all ones.
//!
//! Matrix form: `{"B": [[0, -1], [1, 0]], "D": [1, 1]}` with `D` optional.
//!
//! Integers may be JSON numbers or decimal strings.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::quiver::{Arrow, ExchangeMatrix, ValuedQuiver};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Num(i64),
    Str(String),
}

impl JsonInt {
    fn to_bigint(&self) -> Result<BigInt> {
        match self {
            JsonInt::Num(x) => Ok(BigInt::from(*x)),
            JsonInt::Str(s) => {
                BigInt::from_str(s.trim()).map_err(|e| Error::Parse(format!("integer {s:?}: {e}")))
            }
        }
    }

    fn to_usize(&self) -> Result<usize> {
        self.to_bigint()?
            .to_usize()
            .ok_or_else(|| Error::Parse("expected a nonnegative vertex label".into()))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverJson {
    n: usize,
    #[serde(default)]
    weights: Option<Vec<JsonInt>>,
    #[serde(default)]
    arrows: Vec<Vec<JsonInt>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    #[serde(rename = "B")]
    b: Vec<Vec<JsonInt>>,
    #[serde(rename = "D", default)]
    d: Option<Vec<JsonInt>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum InputJson {
    Quiver(QuiverJson),
    Matrix(MatrixJson),
}

fn ints(v: &[JsonInt]) -> Result<Vec<BigInt>> {
    v.iter().map(JsonInt::to_bigint).collect()
}

fn quiver_from_json(q: QuiverJson) -> Result<ValuedQuiver> {
    let weights = match q.weights {
        Some(w) => ints(&w)?,
        None => vec![BigInt::one(); q.n],
    };
    if weights.len() != q.n {
        return Err(Error::InvalidQuiver(format!(
            "n = {} but {} weights given",
            q.n,
            weights.len()
        )));
    }
    let mut arrows = Vec::with_capacity(q.arrows.len());
    for a in &q.arrows {
        let arrow = match a.as_slice() {
            [s, t, m] => {
                let m = m.to_bigint()?;
                Arrow::new(s.to_usize()?, t.to_usize()?, m.clone(), m)
            }
            [s, t, d_st, d_ts] => Arrow::new(
                s.to_usize()?,
                t.to_usize()?,
                d_st.to_bigint()?,
                d_ts.to_bigint()?,
            ),
            _ => {
                return Err(Error::Parse(format!(
                    "arrow needs 3 or 4 entries, got {}",
                    a.len()
                )))
            }
        };
        arrows.push(arrow);
    }
    ValuedQuiver::new(weights, arrows)
}

fn matrix_from_json(m: MatrixJson) -> Result<ExchangeMatrix> {
    let rows = m.b.iter().map(|r| ints(r)).collect::<Result<Vec<_>>>()?;
    let n = rows.len();
    let b = IntMatrix::from_rows(rows)?;
    let d = match m.d {
        Some(d) => ints(&d)?,
        None => vec![BigInt::one(); n],
    };
    ExchangeMatrix::new(b, d)
}

/// Parses either JSON form into an exchange matrix.
pub fn parse_exchange(text: &str) -> Result<ExchangeMatrix> {
    match serde_json::from_str::<InputJson>(text).map_err(|e| Error::Parse(e.to_string()))? {
        InputJson::Quiver(q) => Ok(ExchangeMatrix::from_quiver(&quiver_from_json(q)?)),
        InputJson::Matrix(m) => matrix_from_json(m),
    }
}

/// Parses either JSON form into a valued quiver.
pub fn parse_quiver(text: &str) -> Result<ValuedQuiver> {
    match serde_json::from_str::<InputJson>(text).map_err(|e| Error::Parse(e.to_string()))? {
        InputJson::Quiver(q) => quiver_from_json(q),
        InputJson::Matrix(m) => Ok(matrix_from_json(m)?.to_quiver()),
    }
}

/// A JSON number when it fits in `i64`, otherwise a decimal string.
pub fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn vector_value(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_value).collect())
}

pub fn matrix_value(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vector_value(r)).collect())
}

pub fn quiver_value(q: &ValuedQuiver) -> Value {
    json!({
        "n": q.n(),
        "weights": vector_value(q.weights()),
        "arrows": q.arrows().iter().map(|a| json!([
            a.source, a.target, int_value(&a.d_st), int_value(&a.d_ts)
        ])).collect::<Vec<_>>(),
    })
}

pub fn exchange_value(b: &ExchangeMatrix) -> Value {
    json!({ "B": matrix_value(b.b()), "D": vector_value(b.d()) })
}

/// Reads a vector or matrix of JSON integers.
pub fn parse_vector(v: &Value) -> Result<Vec<BigInt>> {
    let items: Vec<JsonInt> =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    ints(&items)
}

pub fn parse_matrix(v: &Value) -> Result<IntMatrix> {
    let rows: Vec<Vec<JsonInt>> =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    IntMatrix::from_rows(rows.iter().map(|r| ints(r)).collect::<Result<_>>()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quiver_form() {
        let q = parse_quiver(
            r#"{"n": 3, "weights": [1, 1, 3], "arrows": [[3, 2, 3, 1], [2, 1, 1, 1]]}"#,
        )
        .unwrap();
        let b = ExchangeMatrix::from_quiver(&q);
        assert_eq!(
            b.b(),
            &IntMatrix::from_i64(&[&[0, -1, 0], &[1, 0, -3], &[0, 1, 0]])
        );
        assert_eq!(parse_quiver(&quiver_value(&q).to_string()).unwrap(), q);
    }

    #[test]
    fn matrix_form_and_shorthand() {
        let a = parse_exchange(r#"{"B": [[0, -2], ["2", 0]]}"#).unwrap();
        let b = parse_exchange(r#"{"n": 2, "arrows": [[2, 1, 2]]}"#).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_exchange(&exchange_value(&a).to_string()).unwrap(), a);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_exchange(r#"{"B": [[0, 1], [1, 0]]}"#).is_err());
        assert!(parse_exchange(r#"{"n": 2, "arrows": [[2, 1]]}"#).is_err());
        assert!(parse_exchange(r#"{"n": 2, "weights": [1], "arrows": []}"#).is_err());
        assert!(parse_exchange("not json").is_err());
    }

    #[test]
    fn big_values_become_strings() {
        let x = BigInt::from(i64::MAX) * 4;
        assert!(int_value(&x).is_string());
        assert_eq!(
            parse_vector(&vector_value(std::slice::from_ref(&x))).unwrap(),
            vec![x]
        );
    }
}

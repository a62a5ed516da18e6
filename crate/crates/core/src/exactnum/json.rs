use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use super::{Polynomial, Ring, TruncatedSeries, Var};
use crate::Error;

/// Lossless JSON form of an exact coefficient.
///
/// Integers are decimal strings, rationals `"p/q"` (or `"p"` when
/// integral), and polynomials arrays of their coefficients in ascending
/// degree.
pub trait JsonCoeff: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, Error>;
}

fn bad(v: &Value, what: &str) -> Error {
    Error::Parse(format!("expected {what}, found {v}"))
}

impl JsonCoeff for BigInt {
    fn to_json(&self) -> Value {
        Value::String(self.to_str_radix(10))
    }
    fn from_json(v: &Value) -> Result<Self, Error> {
        match v {
            Value::String(s) => s.parse().map_err(|_| bad(v, "a decimal integer")),
            Value::Number(n) if n.is_i64() => Ok(BigInt::from(n.as_i64().unwrap_or(0))),
            _ => Err(bad(v, "a decimal integer")),
        }
    }
}

impl JsonCoeff for BigRational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
    fn from_json(v: &Value) -> Result<Self, Error> {
        let s = v.as_str().ok_or_else(|| bad(v, "a rational string"))?;
        parse_rational(s).ok_or_else(|| bad(v, "a rational string"))
    }
}

/// Parses `"p"` or `"p/q"` with integer `p`, nonzero integer `q`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            (!Ring::is_zero(&q)).then(|| BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl<R: Ring + JsonCoeff> JsonCoeff for Polynomial<R> {
    fn to_json(&self) -> Value {
        Value::Array(self.coeffs().iter().map(JsonCoeff::to_json).collect())
    }
    fn from_json(v: &Value) -> Result<Self, Error> {
        let items = v.as_array().ok_or_else(|| bad(v, "a coefficient array"))?;
        let coeffs = items.iter().map(R::from_json).collect::<Result<Vec<_>, _>>()?;
        Ok(Polynomial::new(coeffs))
    }
}

impl<R: Ring + JsonCoeff> TruncatedSeries<R> {
    /// Array of coefficient values, one per power up to the order.
    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs().iter().map(JsonCoeff::to_json).collect())
    }

    /// Inverse of [`TruncatedSeries::to_json`]; the order is the array length minus one.
    pub fn from_json(var: Var, v: &Value) -> Result<Self, Error> {
        let items = v.as_array().ok_or_else(|| bad(v, "a series array"))?;
        if items.is_empty() {
            return Err(bad(v, "a nonempty series array"));
        }
        let coeffs = items.iter().map(R::from_json).collect::<Result<Vec<_>, _>>()?;
        Ok(TruncatedSeries::new(var, coeffs.len() - 1, coeffs))
    }
}

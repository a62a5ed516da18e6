//! Serializable coefficient tables.
//!
//! A [`SeriesReport`] carries a series in the JSON form of
//! [`JsonCoeff`](crate::exactnum::JsonCoeff), which is lossless, so a
//! report read back gives the identical series.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::exactnum::{BiTruncatedSeries, JsonCoeff, Ring, TruncatedSeries, Var};
use crate::Error;

/// Whether the oracle or residual check behind a series was run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    NotRun,
    Passed,
    Failed,
}

impl From<bool> for CheckStatus {
    fn from(ok: bool) -> Self {
        if ok {
            CheckStatus::Passed
        } else {
            CheckStatus::Failed
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// Which engine or equation produced the coefficients.
    pub route: String,
    pub oracle_check: CheckStatus,
}

/// A named series with its coefficients.
///
/// Univariate series store an array indexed by the power of `mainvar`.
/// Bivariate series also set `secondvar` and store one row per power of
/// `mainvar`, each row indexed by the power of `secondvar`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub name: String,
    pub mainvar: Var,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub secondvar: Option<Var>,
    pub order: usize,
    pub coefficients: Value,
    pub provenance: Provenance,
    /// Wall time in milliseconds; left out for reproducible output.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl SeriesReport {
    pub fn from_series<R: Ring + JsonCoeff>(
        name: impl Into<String>,
        series: &TruncatedSeries<R>,
        route: impl Into<String>,
    ) -> Self {
        SeriesReport {
            name: name.into(),
            mainvar: series.var(),
            secondvar: None,
            order: series.order(),
            coefficients: series.to_json(),
            provenance: Provenance {
                route: route.into(),
                oracle_check: CheckStatus::NotRun,
            },
            timing_ms: None,
        }
    }

    /// Rows are powers of `mainvar`; the order is that of `mainvar`.
    pub fn from_biseries<R: Ring + JsonCoeff>(
        name: impl Into<String>,
        vars: (Var, Var),
        series: &BiTruncatedSeries<R>,
        route: impl Into<String>,
    ) -> Self {
        let (ns, nt) = series.orders();
        let rows = (0..=ns)
            .map(|i| Value::Array((0..=nt).map(|j| series.coeff(i, j).to_json()).collect()))
            .collect();
        SeriesReport {
            name: name.into(),
            mainvar: vars.0,
            secondvar: Some(vars.1),
            order: ns,
            coefficients: Value::Array(rows),
            provenance: Provenance {
                route: route.into(),
                oracle_check: CheckStatus::NotRun,
            },
            timing_ms: None,
        }
    }

    pub fn with_check(mut self, status: CheckStatus) -> Self {
        self.provenance.oracle_check = status;
        self
    }

    pub fn with_timing(mut self, ms: Option<f64>) -> Self {
        self.timing_ms = ms;
        self
    }

    pub fn to_series<R: Ring + JsonCoeff>(&self) -> Result<TruncatedSeries<R>, Error> {
        let s = TruncatedSeries::from_json(self.mainvar, &self.coefficients)?;
        if s.order() != self.order {
            return Err(Error::Parse(format!(
                "report order {} but {} coefficients",
                self.order,
                s.order() + 1
            )));
        }
        Ok(s)
    }

    pub fn to_biseries<R: Ring + JsonCoeff>(&self) -> Result<BiTruncatedSeries<R>, Error> {
        let rows = self
            .coefficients
            .as_array()
            .ok_or_else(|| Error::Parse("bivariate coefficients must be an array of rows".into()))?;
        let parsed: Vec<Vec<R>> = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::Parse("row must be an array".into()))?
                    .iter()
                    .map(R::from_json)
                    .collect()
            })
            .collect::<Result<_, Error>>()?;
        let nt = parsed.first().map_or(0, |r| r.len().saturating_sub(1));
        if parsed.len() != self.order + 1 || parsed.iter().any(|r| r.len() != nt + 1) {
            return Err(Error::Parse("ragged or mis-sized coefficient table".into()));
        }
        Ok(BiTruncatedSeries::from_fn(self.order, nt, |i, j| parsed[i][j].clone()))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json_str(s: &str) -> Result<Self, Error> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Serde adapter writing a big integer as a decimal string.
pub mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

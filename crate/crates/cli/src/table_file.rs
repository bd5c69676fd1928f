//! `CoeffTableFile`: a self-describing JSON form of a `JacobiSeries` with
//! decimal-string coefficients.

use anyhow::{bail, Context, Result};
use num_bigint::BigInt;
use paramodular_core::JacobiSeries;
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "paramodular.coeff-table";
pub const VERSION: u32 = 1;
pub const Q_UNIT: &str = "1/24";
pub const ZETA_UNIT: &str = "1/2";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Units {
    pub q: String,
    pub zeta: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub schema: String,
    pub version: u32,
    pub units: Units,
    pub weight2: i64,
    pub index2: i64,
    pub prec24: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<i64>,
}

/// Rows are `(n24, r2, coeff)` sorted by `(n24, r2)` with no zero entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffTableFile {
    pub header: Header,
    pub rows: Vec<(i64, i64, String)>,
}

impl CoeffTableFile {
    pub fn from_series(s: &JacobiSeries, level: Option<i64>) -> Self {
        let rows = s.terms().map(|(q24, r2, c)| (q24, r2, c.to_string())).collect();
        Self {
            header: Header {
                schema: SCHEMA.into(),
                version: VERSION,
                units: Units { q: Q_UNIT.into(), zeta: ZETA_UNIT.into() },
                weight2: s.weight2(),
                index2: s.index2(),
                prec24: s.prec24(),
                level,
            },
            rows,
        }
    }

    pub fn to_series(&self) -> Result<JacobiSeries> {
        let h = &self.header;
        if h.schema != SCHEMA || h.version != VERSION {
            bail!("unsupported table schema {} v{}", h.schema, h.version);
        }
        if h.units.q != Q_UNIT || h.units.zeta != ZETA_UNIT {
            bail!("unsupported units q={} zeta={}", h.units.q, h.units.zeta);
        }
        let mut terms = Vec::with_capacity(self.rows.len());
        let mut last: Option<(i64, i64)> = None;
        for (q24, r2, c) in &self.rows {
            if last.is_some_and(|l| l >= (*q24, *r2)) {
                bail!("rows are not strictly sorted at ({q24}, {r2})");
            }
            last = Some((*q24, *r2));
            if *q24 >= h.prec24 {
                bail!("row ({q24}, {r2}) lies at or beyond the precision {}", h.prec24);
            }
            let v: BigInt = c.parse().with_context(|| format!("bad coefficient {c:?}"))?;
            if v == BigInt::from(0) {
                bail!("zero coefficient stored at ({q24}, {r2})");
            }
            terms.push((*q24, *r2, v));
        }
        Ok(JacobiSeries::from_terms(h.weight2, h.index2, h.prec24, terms))
    }

    /// JSON value with lexicographically sorted keys.
    pub fn to_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> JacobiSeries {
        let big: BigInt = "-123456789012345678901234567890".parse().unwrap();
        JacobiSeries::from_terms(4, 74, 240, [(48, 10, BigInt::from(1)), (48, -10, BigInt::from(-1)), (72, 0, big)])
    }

    #[test]
    fn round_trip_is_identical() {
        let s = sample();
        let file = CoeffTableFile::from_series(&s, Some(37));
        let text = serde_json::to_string_pretty(&file.to_value()).unwrap();
        let back = CoeffTableFile::from_json(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_series().unwrap(), s);
    }

    #[test]
    fn keys_and_rows_are_sorted() {
        let file = CoeffTableFile::from_series(&sample(), None);
        let text = serde_json::to_string(&file.to_value()).unwrap();
        assert!(text.find("\"header\"").unwrap() < text.find("\"rows\"").unwrap());
        assert!(text.find("\"index2\"").unwrap() < text.find("\"prec24\"").unwrap());
        assert!(!text.contains("level"));
        assert_eq!(file.rows[0], (48, -10, "-1".to_string()));
    }

    #[test]
    fn rejects_malformed_tables() {
        let mut file = CoeffTableFile::from_series(&sample(), None);
        file.rows.swap(0, 1);
        assert!(file.to_series().is_err());
        let mut file = CoeffTableFile::from_series(&sample(), None);
        file.rows[0].2 = "0".into();
        assert!(file.to_series().is_err());
        let mut file = CoeffTableFile::from_series(&sample(), None);
        file.header.units.q = "1".into();
        assert!(file.to_series().is_err());
    }
}

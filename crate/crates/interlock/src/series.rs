//! Count series and their on-disk JSON form.
//!
//! A series holds exact terms (arbitrary-precision, serialized as decimal
//! strings) optionally followed by predicted terms (floats with an ensemble
//! standard deviation). Exact values round-trip bit-exactly; files written
//! by this module are byte-stable under read/write cycles.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::rational_to_f64;

pub const SERIES_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum SeriesError {
    #[error("malformed series file: {0}")]
    Malformed(String),
    #[error("term {index}: {reason}")]
    BadTerm { index: usize, reason: String },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

/// One term of a count series.
#[derive(Debug, Clone, PartialEq)]
pub enum Term {
    /// Exact value (integer count, or an exact rational for derived
    /// series such as leading polynomial coefficients).
    Exact(BigRational),
    /// Ensemble prediction with its standard deviation.
    Predicted { value: f64, sigma: f64 },
}

impl Term {
    pub fn is_exact(&self) -> bool {
        matches!(self, Term::Exact(_))
    }

    /// Numeric value as f64 (rounded for exact terms).
    pub fn value_f64(&self) -> f64 {
        match self {
            Term::Exact(v) => rational_to_f64(v),
            Term::Predicted { value, .. } => *value,
        }
    }

    /// Exact or float value as an exact rational (floats are rationals).
    pub fn value_rational(&self) -> BigRational {
        match self {
            Term::Exact(v) => v.clone(),
            Term::Predicted { value, .. } => {
                BigRational::from_float(*value).unwrap_or_else(BigRational::zero)
            }
        }
    }
}

/// An exact integer/rational sequence `a_1..a_N` for one structure family,
/// with per-term provenance. Predicted terms may only follow the exact ones.
#[derive(Debug, Clone, PartialEq)]
pub struct CountSeries {
    pub family: String,
    pub w: Option<u32>,
    pub generator: String,
    terms: Vec<Term>,
}

impl CountSeries {
    pub fn new(family: impl Into<String>, w: Option<u32>, generator: impl Into<String>) -> Self {
        CountSeries { family: family.into(), w, generator: generator.into(), terms: Vec::new() }
    }

    pub fn from_counts<I: IntoIterator<Item = BigUint>>(
        family: impl Into<String>,
        w: Option<u32>,
        generator: impl Into<String>,
        counts: I,
    ) -> Self {
        let mut s = Self::new(family, w, generator);
        for c in counts {
            s.push_exact(BigRational::from_integer(BigInt::from(c)));
        }
        s
    }

    pub fn push_exact(&mut self, value: BigRational) {
        assert!(
            self.terms.iter().all(Term::is_exact),
            "exact terms may not follow predicted ones"
        );
        self.terms.push(Term::Exact(value));
    }

    pub fn push_predicted(&mut self, value: f64, sigma: f64) {
        self.terms.push(Term::Predicted { value, sigma });
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Term a_n (1-indexed).
    pub fn term(&self, n: usize) -> &Term {
        &self.terms[n - 1]
    }

    pub fn exact_len(&self) -> usize {
        self.terms.iter().take_while(|t| t.is_exact()).count()
    }

    /// The exact prefix as rationals.
    pub fn exact_terms(&self) -> Vec<BigRational> {
        self.terms
            .iter()
            .take_while(|t| t.is_exact())
            .map(Term::value_rational)
            .collect()
    }

    /// The exact prefix as non-negative integers; `None` if any exact term
    /// is not a non-negative integer (e.g. a leading-coefficient series).
    pub fn exact_counts(&self) -> Option<Vec<BigUint>> {
        self.terms
            .iter()
            .take_while(|t| t.is_exact())
            .map(|t| match t {
                Term::Exact(v) if v.is_integer() && !v.is_negative() => {
                    v.to_integer().to_biguint()
                }
                _ => None,
            })
            .collect()
    }

    /// All terms (exact and predicted) as rationals.
    pub fn all_terms_rational(&self) -> Vec<BigRational> {
        self.terms.iter().map(Term::value_rational).collect()
    }

    pub fn truncated(&self, n: usize) -> CountSeries {
        CountSeries {
            family: self.family.clone(),
            w: self.w,
            generator: self.generator.clone(),
            terms: self.terms[..n.min(self.terms.len())].to_vec(),
        }
    }
}

// ---- on-disk schema ----

#[derive(Serialize, Deserialize)]
struct SeriesFileDoc {
    family: String,
    w: Option<u32>,
    terms: Vec<TermDoc>,
    generator: String,
    version: u32,
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    value: serde_json::Value,
    provenance: String,
    sigma: Option<f64>,
}

fn rational_to_string(v: &BigRational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

fn rational_from_string(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Serialize a series to the documented JSON schema. Exact values are
/// decimal strings; predicted values are JSON numbers with a sigma.
pub fn write_series(series: &CountSeries) -> String {
    let doc = SeriesFileDoc {
        family: series.family.clone(),
        w: series.w,
        terms: series
            .terms
            .iter()
            .map(|t| match t {
                Term::Exact(v) => TermDoc {
                    value: serde_json::Value::String(rational_to_string(v)),
                    provenance: "exact".into(),
                    sigma: None,
                },
                Term::Predicted { value, sigma } => TermDoc {
                    value: serde_json::json!(value),
                    provenance: "predicted".into(),
                    sigma: Some(*sigma),
                },
            })
            .collect(),
        generator: series.generator.clone(),
        version: SERIES_SCHEMA_VERSION,
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("serializable");
    out.push('\n');
    out
}

pub fn read_series(text: &str) -> Result<CountSeries, SeriesError> {
    let doc: SeriesFileDoc = serde_json::from_str(text)?;
    if doc.version != SERIES_SCHEMA_VERSION {
        return Err(SeriesError::Malformed(format!(
            "unsupported schema version {} (expected {SERIES_SCHEMA_VERSION}) in field 'version'",
            doc.version
        )));
    }
    let mut series = CountSeries::new(doc.family, doc.w, doc.generator);
    let mut seen_predicted = false;
    for (i, t) in doc.terms.iter().enumerate() {
        match t.provenance.as_str() {
            "exact" => {
                if seen_predicted {
                    return Err(SeriesError::BadTerm {
                        index: i,
                        reason: "exact term after a predicted term (field 'provenance')".into(),
                    });
                }
                let s = t.value.as_str().ok_or_else(|| SeriesError::BadTerm {
                    index: i,
                    reason: "exact term value must be a decimal string (field 'value')".into(),
                })?;
                let v = rational_from_string(s).ok_or_else(|| SeriesError::BadTerm {
                    index: i,
                    reason: format!("unparseable exact value {s:?} (field 'value')"),
                })?;
                series.push_exact(v);
            }
            "predicted" => {
                seen_predicted = true;
                let v = t.value.as_f64().ok_or_else(|| SeriesError::BadTerm {
                    index: i,
                    reason: "predicted term value must be a number (field 'value')".into(),
                })?;
                series.push_predicted(v, t.sigma.unwrap_or(0.0));
            }
            other => {
                return Err(SeriesError::BadTerm {
                    index: i,
                    reason: format!("unknown provenance {other:?} (field 'provenance')"),
                })
            }
        }
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn round_trip_is_byte_identical() {
        let mut s = CountSeries::new("flat-w2", Some(2), "test");
        for v in [1u64, 3, 11, 44, 186] {
            s.push_exact(BigRational::from_integer(BigInt::from(v)));
        }
        s.push_predicted(814.0000123, 0.0017);
        let text = write_series(&s);
        let back = read_series(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(write_series(&back), text);
    }

    #[test]
    fn huge_terms_round_trip_exactly() {
        let mut s = CountSeries::new("flat-w2", Some(2), "test");
        let big: BigInt = "5227785863956950802".parse().unwrap();
        s.push_exact(BigRational::from_integer(big.clone()));
        let back = read_series(&write_series(&s)).unwrap();
        match back.term(1) {
            Term::Exact(v) => assert_eq!(v.numer(), &big),
            _ => panic!("expected exact"),
        }
    }

    #[test]
    fn rational_terms_round_trip() {
        let mut s = CountSeries::new("leading-coeffs", None, "test");
        s.push_exact(BigRational::one());
        s.push_exact(BigRational::new(BigInt::from(41), BigInt::from(3)));
        let back = read_series(&write_series(&s)).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn rejects_exact_after_predicted() {
        let text = r#"{
          "family": "custom", "w": null,
          "terms": [
            {"value": 1.25, "provenance": "predicted", "sigma": 0.1},
            {"value": "7", "provenance": "exact", "sigma": null}
          ],
          "generator": "x", "version": 1
        }"#;
        assert!(matches!(read_series(text), Err(SeriesError::BadTerm { .. })));
    }

    #[test]
    fn rejects_bad_version() {
        let text = r#"{"family":"custom","w":null,"terms":[],"generator":"x","version":99}"#;
        assert!(matches!(read_series(text), Err(SeriesError::Malformed(_))));
    }
}

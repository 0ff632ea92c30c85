//! Embedded golden reference data: count series, polynomial coefficient
//! tables, asymptotic targets and the prediction-demo table. The JSON
//! sources live under `fixtures/` with provenance notes; tests assert
//! against these rather than recomputing their own expectations.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::Deserialize;

const FLAT_COUNTS: &str = include_str!("../fixtures/flat_counts.json");
const BRICK_COUNTS: &str = include_str!("../fixtures/brick_counts.json");
const ASYMPTOTICS: &str = include_str!("../fixtures/asymptotics.json");
const PREDICTION: &str = include_str!("../fixtures/prediction.json");
const POLYNOMIALS: &str = include_str!("../fixtures/polynomials.json");

fn parse_biguint(s: &str) -> BigUint {
    s.parse().expect("fixture integer")
}

fn parse_rational(s: &str) -> BigRational {
    match s.split_once('/') {
        Some((n, d)) => BigRational::new(
            n.parse::<BigInt>().expect("fixture numerator"),
            d.parse::<BigInt>().expect("fixture denominator"),
        ),
        None => BigRational::from_integer(s.parse::<BigInt>().expect("fixture integer")),
    }
}

/// Golden flat count columns: `flat_counts()[&w]` is a_1.. for that width.
pub fn flat_counts() -> &'static BTreeMap<u32, Vec<BigUint>> {
    static CELL: OnceLock<BTreeMap<u32, Vec<BigUint>>> = OnceLock::new();
    CELL.get_or_init(|| {
        #[derive(Deserialize)]
        struct Doc {
            columns: BTreeMap<String, Vec<String>>,
        }
        let doc: Doc = serde_json::from_str(FLAT_COUNTS).expect("flat_counts.json");
        doc.columns
            .into_iter()
            .map(|(w, col)| {
                (w.parse().expect("width"), col.iter().map(|s| parse_biguint(s)).collect())
            })
            .collect()
    })
}

/// Golden 2x4-brick building counts (10 terms).
pub fn brick_counts() -> &'static Vec<BigUint> {
    static CELL: OnceLock<Vec<BigUint>> = OnceLock::new();
    CELL.get_or_init(|| {
        #[derive(Deserialize)]
        struct Doc {
            terms: Vec<String>,
        }
        let doc: Doc = serde_json::from_str(BRICK_COUNTS).expect("brick_counts.json");
        doc.terms.iter().map(|s| parse_biguint(s)).collect()
    })
}

#[derive(Debug, Clone, Deserialize)]
pub struct FlatAsymptotics {
    pub w: u32,
    pub mu: f64,
    pub amplitude: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct BrickAsymptotics {
    pub mu: f64,
    pub mu_tol: f64,
    pub amplitude: f64,
    pub gf_amplitude: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct AsymptoticsTargets {
    pub flat: Vec<FlatAsymptotics>,
    pub brick2x4: BrickAsymptotics,
}

/// Reference growth constants and amplitudes.
pub fn asymptotics_targets() -> &'static AsymptoticsTargets {
    static CELL: OnceLock<AsymptoticsTargets> = OnceLock::new();
    CELL.get_or_init(|| {
        #[derive(Deserialize)]
        struct Doc {
            flat: Vec<FlatAsymptotics>,
            brick2x4: BrickAsymptotics,
        }
        let doc: Doc = serde_json::from_str(ASYMPTOTICS).expect("asymptotics.json");
        AsymptoticsTargets { flat: doc.flat, brick2x4: doc.brick2x4 }
    })
}

#[derive(Debug, Clone)]
pub struct PredictionRow {
    pub actual: BigUint,
    pub reference_predicted: BigUint,
}

/// The extension-demo reference: first 20 terms known, last 9 predicted.
pub fn prediction_table() -> &'static (usize, Vec<PredictionRow>) {
    static CELL: OnceLock<(usize, Vec<PredictionRow>)> = OnceLock::new();
    CELL.get_or_init(|| {
        #[derive(Deserialize)]
        struct Row {
            actual: String,
            reference_predicted: String,
        }
        #[derive(Deserialize)]
        struct Doc {
            first_known: usize,
            rows: Vec<Row>,
        }
        let doc: Doc = serde_json::from_str(PREDICTION).expect("prediction.json");
        (
            doc.first_known,
            doc.rows
                .into_iter()
                .map(|r| PredictionRow {
                    actual: parse_biguint(&r.actual),
                    reference_predicted: parse_biguint(&r.reference_predicted),
                })
                .collect(),
        )
    })
}

#[derive(Debug, Clone)]
pub struct PolynomialFixtures {
    /// monomial coefficients of p_n, ascending powers, exact
    pub monomial: BTreeMap<usize, Vec<BigRational>>,
    /// binomial coefficients a_{n,k}, k = 1..n
    pub binomial: BTreeMap<usize, Vec<BigUint>>,
    /// numerators A_n of the generating functions, ascending powers
    pub gf_numerators: BTreeMap<usize, Vec<BigUint>>,
    pub pyramid_binomial: BTreeMap<usize, Vec<BigUint>>,
    pub pyramid_monomial: BTreeMap<usize, Vec<BigRational>>,
}

pub fn polynomials() -> &'static PolynomialFixtures {
    static CELL: OnceLock<PolynomialFixtures> = OnceLock::new();
    CELL.get_or_init(|| {
        #[derive(Deserialize)]
        struct Doc {
            monomial: BTreeMap<String, Vec<String>>,
            binomial: BTreeMap<String, Vec<String>>,
            gf_numerators: BTreeMap<String, Vec<String>>,
            pyramid_binomial: BTreeMap<String, Vec<String>>,
            pyramid_monomial: BTreeMap<String, Vec<String>>,
        }
        let doc: Doc = serde_json::from_str(POLYNOMIALS).expect("polynomials.json");
        fn rat_map(m: BTreeMap<String, Vec<String>>) -> BTreeMap<usize, Vec<BigRational>> {
            m.into_iter()
                .map(|(n, v)| {
                    (n.parse().expect("n"), v.iter().map(|s| parse_rational(s)).collect())
                })
                .collect()
        }
        fn int_map(m: BTreeMap<String, Vec<String>>) -> BTreeMap<usize, Vec<BigUint>> {
            m.into_iter()
                .map(|(n, v)| {
                    (n.parse().expect("n"), v.iter().map(|s| parse_biguint(s)).collect())
                })
                .collect()
        }
        PolynomialFixtures {
            monomial: rat_map(doc.monomial),
            binomial: int_map(doc.binomial),
            gf_numerators: int_map(doc.gf_numerators),
            pyramid_binomial: int_map(doc.pyramid_binomial),
            pyramid_monomial: rat_map(doc.pyramid_monomial),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse_and_agree() {
        let flat = flat_counts();
        assert_eq!(flat[&2].len(), 29);
        assert_eq!(flat[&10].len(), 14);
        assert_eq!(brick_counts().len(), 10);
        assert_eq!(asymptotics_targets().flat.len(), 9);
        let (first_known, rows) = prediction_table();
        assert_eq!((*first_known, rows.len()), (20, 9));
        // the prediction table's actual column is the tail of the w=2 series
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.actual, flat[&2][20 + i]);
        }
        let poly = polynomials();
        assert_eq!(poly.monomial.len(), 14);
        assert_eq!(poly.binomial.len(), 14);
        assert_eq!(poly.gf_numerators.len(), 14);
        // binomial column k=2 is the w=2 count minus one
        for n in 2..=14usize {
            let a2 = &poly.binomial[&n][1];
            let w2 = &flat[&2][n - 1];
            assert_eq!(w2 - 1u32, *a2, "n={n}");
        }
    }
}

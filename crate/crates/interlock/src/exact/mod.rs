//! Exact arithmetic substrate: big-integer binomials, Stirling numbers,
//! rational polynomial algebra and exact linear solving.
//!
//! Counts and polynomial coefficients are kept exact end to end; floating
//! point appears only in the asymptotic-analysis layer.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

mod poly;

pub use poly::{binomial_from_monomial, monomial_from_binomial, BinomialRep, ExactPolynomial};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("stirling index out of range: ({k}, {i})")]
    StirlingOutOfRange { k: usize, i: usize },
    #[error("singular linear system")]
    SingularMatrix,
    #[error("linear system shape mismatch")]
    ShapeMismatch,
    #[error("binomial coefficient a_{k} is not an integer; not a count polynomial")]
    NonIntegralBinomialCoeff { k: usize },
    #[error("binomial coefficient a_{k} is negative; not a count polynomial")]
    NegativeBinomialCoeff { k: usize },
}

/// Binomial coefficient C(m, k) as a non-negative exact integer.
/// Zero whenever `k < 0` or `k > m` (in particular for negative `m`).
pub fn binomial(m: i64, k: i64) -> BigUint {
    if k < 0 || k > m {
        return BigUint::zero();
    }
    let k = (k as u64).min((m - k) as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(m as u64 - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn factorial(n: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

/// Signed Stirling numbers of the first kind, s(k, i), by the recurrence
/// s(k, i) = s(k-1, i-1) - (k-1) * s(k-1, i). Sign convention fixed by the
/// conversion identity C(w-1, k-1) = (1/(k-1)!) * sum_j s(k, j+1) w^j,
/// which is round-trip checked in tests rather than trusted blindly.
pub fn stirling_first(k: usize, i: usize) -> Result<BigInt, ExactError> {
    if i > k {
        return Err(ExactError::StirlingOutOfRange { k, i });
    }
    let mut row: Vec<BigInt> = vec![BigInt::one()];
    for m in 1..=k {
        let mut next = vec![BigInt::zero(); m + 1];
        for (j, item) in next.iter_mut().enumerate() {
            let mut v = BigInt::zero();
            if j >= 1 {
                v += &row[j - 1];
            }
            if j < row.len() {
                v -= BigInt::from(m as i64 - 1) * &row[j];
            }
            *item = v;
        }
        row = next;
    }
    Ok(row[i].clone())
}

/// Stirling numbers of the second kind, S(k, i):
/// S(k, i) = i * S(k-1, i) + S(k-1, i-1).
pub fn stirling_second(k: usize, i: usize) -> Result<BigUint, ExactError> {
    if i > k {
        return Err(ExactError::StirlingOutOfRange { k, i });
    }
    let mut row: Vec<BigUint> = vec![BigUint::one()];
    for m in 1..=k {
        let mut next = vec![BigUint::zero(); m + 1];
        for (j, item) in next.iter_mut().enumerate() {
            let mut v = BigUint::zero();
            if j >= 1 {
                v += &row[j - 1];
            }
            if j < row.len() {
                v += BigUint::from(j) * &row[j];
            }
            *item = v;
        }
        row = next;
    }
    Ok(row[i].clone())
}

/// Solve a square linear system by rational Gaussian elimination with
/// partial pivoting. Exact; singular systems are reported, not approximated.
pub fn solve_exact_linear(
    matrix: &[Vec<BigRational>],
    rhs: &[BigRational],
) -> Result<Vec<BigRational>, ExactError> {
    let n = matrix.len();
    if rhs.len() != n || matrix.iter().any(|r| r.len() != n) {
        return Err(ExactError::ShapeMismatch);
    }
    let mut a: Vec<Vec<BigRational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(ExactError::SingularMatrix)?;
        a.swap(col, piv);
        let inv = a[col][col].clone();
        for x in a[col][col..].iter_mut() {
            *x /= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=n {
                    let sub = &f * &a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Convenience: a rational from an `f64` (exact; every finite f64 is rational).
pub fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// Round a rational to the nearest `f64`. Works for numerators and
/// denominators far beyond f64 range as long as the value itself fits.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    let num = x.numer();
    let den = x.denom();
    if num.is_zero() {
        return 0.0;
    }
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    // Keep ~80 quotient bits so the final f64 rounding is accurate.
    let shift = (nb - db - 80).max(0) as u64;
    let q: BigUint = (num.magnitude() << 80u32) / (den.magnitude() << shift);
    let mut v = 0.0f64;
    let digits = q.to_u64_digits();
    for (i, d) in digits.iter().enumerate().rev() {
        v += (*d as f64) * 2f64.powi(64 * i as i32);
    }
    v *= 2f64.powi(shift as i32 - 80);
    if num.is_negative() {
        -v
    } else {
        v
    }
}

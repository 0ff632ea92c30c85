//! Exact polynomials over the rationals, with the binomial-basis
//! representation used for count polynomials.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{binomial, factorial, ExactError};

/// A polynomial with exact rational coefficients, stored in ascending
/// powers. The coefficient vector is kept trimmed: the leading coefficient
/// is nonzero unless the polynomial is zero (empty vector).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactPolynomial {
    coeffs: Vec<BigRational>,
}

impl ExactPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        ExactPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        ExactPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(coeff: BigRational, power: usize) -> Self {
        let mut v = vec![BigRational::zero(); power + 1];
        v[power] = coeff;
        Self::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `w^i` (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, w: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * w + c;
        }
        acc
    }

    pub fn eval_int(&self, w: i64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(w)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Substitute `w -> a + b*w`, exactly.
    pub fn compose_affine(&self, a: &BigRational, b: &BigRational) -> Self {
        let lin = Self::new(vec![a.clone(), b.clone()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Coefficient sequence reversed: x^d * p(1/x) for degree-d `p`.
    pub fn reversed(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::new(v)
    }

    /// True iff the coefficient sequence is palindromic.
    pub fn is_palindromic(&self) -> bool {
        !self.is_zero() && *self == self.reversed()
    }

    /// Weak unimodality of the coefficient sequence (non-decreasing, then
    /// non-increasing; ties allowed).
    pub fn is_unimodal(&self) -> bool {
        let c = &self.coeffs;
        let mut i = 0;
        while i + 1 < c.len() && c[i] <= c[i + 1] {
            i += 1;
        }
        while i + 1 < c.len() && c[i] >= c[i + 1] {
            i += 1;
        }
        i + 1 >= c.len().max(1)
    }

    /// Exact division by `(1 + x)`; `None` if it does not divide.
    pub fn div_one_plus_x(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut rem = self.coeffs.clone();
        let mut out = vec![BigRational::zero(); rem.len() - 1];
        for i in (1..rem.len()).rev() {
            let q = rem[i].clone();
            out[i - 1] = q.clone();
            rem[i] = BigRational::zero();
            rem[i - 1] -= q;
        }
        if rem[0].is_zero() {
            Some(Self::new(out))
        } else {
            None
        }
    }

    /// Render as a human-readable expression in `w`, highest power first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag_str = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            let term = match i {
                0 => mag_str,
                1 => {
                    if mag.is_one() {
                        var.to_string()
                    } else {
                        format!("{mag_str} {var}")
                    }
                }
                _ => {
                    if mag.is_one() {
                        format!("{var}^{i}")
                    } else {
                        format!("{mag_str} {var}^{i}")
                    }
                }
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() {
                    format!("-{term}")
                } else {
                    term
                });
            } else {
                parts.push(format!("{sign} {term}"));
            }
        }
        parts.join(" ")
    }
}

/// Binomial-basis representation of a count polynomial:
/// `p(w) = sum_{k=1..n} a_k * C(w-1, k-1)` with non-negative integer `a_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialRep {
    n: usize,
    coeffs: Vec<BigUint>,
}

impl BinomialRep {
    pub fn new(coeffs: Vec<BigUint>) -> Self {
        assert!(!coeffs.is_empty(), "binomial rep needs at least one coefficient");
        BinomialRep { n: coeffs.len(), coeffs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficient a_{n,k} for `k` in `1..=n`.
    pub fn coeff(&self, k: usize) -> &BigUint {
        &self.coeffs[k - 1]
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn eval_int(&self, w: i64) -> BigUint {
        let mut acc = BigUint::zero();
        for (idx, a) in self.coeffs.iter().enumerate() {
            let k = idx as i64 + 1;
            acc += a * binomial(w - 1, k - 1);
        }
        acc
    }
}

/// Expand a binomial representation into monomial form, exactly:
/// `C(w-1, k-1) = (1/(k-1)!) * prod_{j=1}^{k-1} (w - j)`.
pub fn monomial_from_binomial(rep: &BinomialRep) -> ExactPolynomial {
    let mut acc = ExactPolynomial::zero();
    let mut basis = ExactPolynomial::constant(BigRational::one());
    for (idx, a) in rep.coeffs().iter().enumerate() {
        let k = idx + 1;
        if k > 1 {
            // multiply the running product by (w - (k-1))
            let j = BigRational::from_integer(BigInt::from(k as i64 - 1));
            basis = basis.mul(&ExactPolynomial::new(vec![-j, BigRational::one()]));
        }
        let scale = BigRational::new(BigInt::from(a.clone()), BigInt::from(factorial(k - 1)));
        acc = acc.add(&basis.scale(&scale));
    }
    acc
}

/// Invert [`monomial_from_binomial`] via forward differences at w = 1, 2, ...:
/// `a_k = Delta^{k-1} p(1)`. Errors if any coefficient comes out non-integral
/// or negative, which signals the input is not a count polynomial.
pub fn binomial_from_monomial(p: &ExactPolynomial) -> Result<BinomialRep, ExactError> {
    let deg = p.degree().unwrap_or(0);
    let n = deg + 1;
    let mut diffs: Vec<BigRational> = (1..=n as i64).map(|w| p.eval_int(w)).collect();
    let mut coeffs = Vec::with_capacity(n);
    for k in 0..n {
        let a = diffs[0].clone();
        if !a.is_integer() {
            return Err(ExactError::NonIntegralBinomialCoeff { k: k + 1 });
        }
        if a.is_negative() {
            return Err(ExactError::NegativeBinomialCoeff { k: k + 1 });
        }
        coeffs.push(a.to_integer().to_biguint().expect("non-negative"));
        for i in 0..diffs.len() - k - 1 {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
    }
    Ok(BinomialRep::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn p4_binomial_to_monomial() {
        // (1, 43, 123, 82) -> 41/3 w^3 - 41/2 w^2 + 53/6 w - 1
        let rep = BinomialRep::new(
            [1u32, 43, 123, 82].iter().map(|&x| BigUint::from_u32(x).unwrap()).collect(),
        );
        let p = monomial_from_binomial(&rep);
        assert_eq!(p.coeffs(), &[rat(-1, 1), rat(53, 6), rat(-41, 2), rat(41, 3)]);
        assert_eq!(binomial_from_monomial(&p).unwrap(), rep);
    }

    #[test]
    fn constant_rep_round_trip() {
        let rep = BinomialRep::new(vec![BigUint::one()]);
        let p = monomial_from_binomial(&rep);
        assert_eq!(p, ExactPolynomial::constant(BigRational::one()));
        assert_eq!(binomial_from_monomial(&p).unwrap(), rep);
    }

    #[test]
    fn non_integral_rejected() {
        let p = ExactPolynomial::new(vec![rat(1, 2), rat(1, 3)]);
        assert!(matches!(
            binomial_from_monomial(&p),
            Err(ExactError::NonIntegralBinomialCoeff { .. })
        ));
    }

    #[test]
    fn one_plus_x_division() {
        // (1+x)(1+39x+x^2) = 1 + 40x + 40x^2 + x^3
        let a4 = ExactPolynomial::new(vec![rat(1, 1), rat(40, 1), rat(40, 1), rat(1, 1)]);
        let b = a4.div_one_plus_x().unwrap();
        assert_eq!(b.coeffs(), &[rat(1, 1), rat(39, 1), rat(1, 1)]);
        assert!(b.is_palindromic());
        let a3 = ExactPolynomial::new(vec![rat(1, 1), rat(8, 1), rat(1, 1)]);
        assert!(a3.div_one_plus_x().is_none());
    }

    #[test]
    fn affine_composition() {
        // p(w) = w^2; p(1-w) = 1 - 2w + w^2
        let p = ExactPolynomial::monomial(BigRational::one(), 2);
        let q = p.compose_affine(&rat(1, 1), &rat(-1, 1));
        assert_eq!(q.coeffs(), &[rat(1, 1), rat(-2, 1), rat(1, 1)]);
    }
}

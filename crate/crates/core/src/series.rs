//! Truncated power series with exact rational coefficients.
//!
//! A series of truncation order N stores coefficients c_0..c_N.  Arithmetic
//! truncates to the smaller of the two operand orders and never silently
//! extends past it.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::rational::BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    /// Builds a series from coefficients c_0..c_N.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        coeffs[0] = c;
        TruncatedSeries { coeffs }
    }

    /// The identity series t, truncated at `order`.
    pub fn identity(order: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        if order >= 1 {
            coeffs[1] = BigRational::from_integer(1.into());
        }
        TruncatedSeries { coeffs }
    }

    /// Truncation order N.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Least k with c_k ≠ 0, or None if all coefficients vanish.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Restricts to a smaller truncation order.
    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        TruncatedSeries {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect();
        TruncatedSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect();
        TruncatedSeries { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for i in 0..=n.min(self.order()) {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i).min(other.order()) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        TruncatedSeries { coeffs }
    }

    pub fn scale(&self, lambda: &BigRational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * lambda).collect(),
        }
    }

    /// Integer power, truncated at the series order.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = TruncatedSeries::constant(BigRational::from_integer(1.into()), self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Termwise derivative; the result has order N − 1 (or 0 for constants).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return TruncatedSeries::zero(0);
        }
        let coeffs = (1..=self.order())
            .map(|k| &self.coeffs[k] * BigRational::from_integer(k.into()))
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Horner evaluation of the truncation at a complex point.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + rational_to_f64(c);
        }
        acc
    }

    /// Exact evaluation of the truncation at a rational point.
    pub fn eval_rational(&self, z: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// The exponential series Σ t^k / k!, truncated at `order`.
    pub fn exp(order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut fact = BigRational::from_integer(1.into());
        coeffs.push(fact.clone());
        for k in 1..=order {
            fact /= BigRational::from_integer(k.into());
            coeffs.push(fact.clone());
        }
        TruncatedSeries { coeffs }
    }
}

/// Lossy conversion of an exact rational to f64.  Falls back to a
/// log-domain quotient when numerator or denominator overflow f64.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let sign = if r.numer().sign() == num_bigint::Sign::Minus {
        -1.0
    } else {
        1.0
    };
    let ln = crate::rational::ln_bigint(&r.numer().abs()) - crate::rational::ln_bigint(r.denom());
    sign * ln.exp()
}

use num_traits::Signed;

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn mul_truncates_to_min_order() {
        let a = TruncatedSeries::identity(5);
        let b = TruncatedSeries::identity(3);
        assert_eq!(a.mul(&b).order(), 3);
        assert_eq!(a.mul(&b).coeff(2), &rat(1, 1));
    }

    #[test]
    fn exp_series_coefficients() {
        let e = TruncatedSeries::exp(5);
        assert_eq!(e.coeff(0), &rat(1, 1));
        assert_eq!(e.coeff(3), &rat(1, 6));
        assert_eq!(e.coeff(5), &rat(1, 120));
    }

    #[test]
    fn derivative_of_exp_is_exp() {
        let e = TruncatedSeries::exp(8);
        let d = e.derivative();
        for k in 0..=7 {
            assert_eq!(d.coeff(k), e.coeff(k));
        }
    }

    #[test]
    fn eval_matches_horner_exact() {
        let s = TruncatedSeries::new(vec![rat(1, 2), rat(-3, 1), rat(2, 5)]);
        let z = rat(1, 3);
        // 1/2 - 3*(1/3) + 2/5*(1/9) = 1/2 - 1 + 2/45
        assert_eq!(s.eval_rational(&z), rat(-41, 90));
    }

    #[test]
    fn valuation_detects_leading_zeros() {
        let s = TruncatedSeries::new(vec![rat(0, 1), rat(0, 1), rat(7, 2)]);
        assert_eq!(s.valuation(), Some(2));
        assert_eq!(TruncatedSeries::zero(4).valuation(), None);
    }
}

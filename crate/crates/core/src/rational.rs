//! Exact rational and projective-point arithmetic over ℚ.
//!
//! Points of Pⁿ(ℚ) are stored as canonical coprime integer coordinates:
//! not all zero, gcd one, first nonzero coordinate positive.  The height of
//! such a point is the naive Weil height log max |x_i|, which is the
//! arithmetic-polarization height specialised to (Pⁿ, O(1), ℓ∞).

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

pub use num_rational::BigRational;

use crate::error::Error;
use crate::Result;

/// A rational point of Pⁿ(ℚ) in canonical coprime integer coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePointQ {
    coords: Vec<BigInt>,
}

/// A height on the natural logarithm scale.  Always ≥ 0.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct HeightValue(pub f64);

impl fmt::Display for ProjectivePointQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl ProjectivePointQ {
    /// Canonicalizes a list of rational homogeneous coordinates: clears
    /// denominators, divides by the gcd and makes the first nonzero
    /// coordinate positive.
    pub fn normalize(raw: &[BigRational]) -> Result<Self> {
        if raw.iter().all(|c| c.is_zero()) {
            return Err(Error::AllZeroCoordinates);
        }
        let mut lcm = BigInt::one();
        for c in raw {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = raw.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        Self::normalize_ints(&ints)
    }

    /// Canonicalizes integer homogeneous coordinates.
    pub fn normalize_ints(ints: &[BigInt]) -> Result<Self> {
        if ints.iter().all(|c| c.is_zero()) {
            return Err(Error::AllZeroCoordinates);
        }
        let mut g = BigInt::zero();
        for c in ints {
            g = g.gcd(c);
        }
        let mut coords: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
        let flip = coords
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.sign() == Sign::Minus)
            .unwrap_or(false);
        if flip {
            for c in &mut coords {
                *c = -&*c;
            }
        }
        Ok(ProjectivePointQ { coords })
    }

    /// Canonical coprime integer coordinates.
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    /// Ambient dimension n (the point lives in Pⁿ).
    pub fn dimension(&self) -> usize {
        self.coords.len() - 1
    }

    /// Naive Weil height h(p) = log max |x_i| over the canonical coordinates.
    pub fn height(&self) -> HeightValue {
        let max = self.max_abs_coord();
        HeightValue(ln_bigint(&max))
    }

    /// Largest coordinate in absolute value.
    pub fn max_abs_coord(&self) -> BigInt {
        self.coords
            .iter()
            .map(|c| c.abs())
            .max()
            .expect("canonical point is nonempty")
    }

    /// Exact height comparison h(p) ≤ log(bound), i.e. max |x_i| ≤ bound.
    pub fn height_at_most(&self, bound: &BigInt) -> bool {
        self.max_abs_coord() <= *bound
    }
}

impl HeightValue {
    pub fn value(&self) -> f64 {
        self.0
    }
}

/// Natural log of a positive big integer, accurate to ~1 ulp even when the
/// integer does not fit in an f64.
pub fn ln_bigint(x: &BigInt) -> f64 {
    assert!(x.is_positive(), "ln_bigint needs a positive argument");
    if let Some(v) = x.to_f64() {
        if v.is_finite() {
            return v.ln();
        }
    }
    // Shift down to 64 significant bits and add back the exponent.
    let bits = x.bits();
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit mantissa fits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Exact integer bound floor(e^T), corrected for float rounding so that
/// k ≤ floor(e^T) iff log k ≤ T up to 1e-12 relative slack.
pub fn floor_exp(t: f64) -> BigInt {
    assert!(t >= 0.0 && t.is_finite(), "floor_exp needs a finite T >= 0");
    let mut k = t.exp().floor().max(1.0) as u128;
    // Walk across the rounding boundary in both directions.
    while ((k + 1) as f64).ln() <= t + 1e-12 {
        k += 1;
    }
    while k > 1 && (k as f64).ln() > t + 1e-12 {
        k -= 1;
    }
    BigInt::from(k)
}

/// All rationals p/q with gcd(p, q) = 1, q ≥ 1 and max(|p|, q) ≤ bound,
/// each exactly once, in ascending order.
pub fn enumerate_rationals_bound(bound: &BigInt) -> Vec<BigRational> {
    let b = bound
        .to_i64()
        .expect("enumeration bound must be small enough to iterate");
    let mut out = Vec::new();
    for q in 1..=b {
        for p in -b..=b {
            if p.gcd(&q) == 1 {
                out.push(BigRational::new(BigInt::from(p), BigInt::from(q)));
            }
        }
    }
    out.sort();
    out
}

/// All rationals of height at most T: max(|p|, q) ≤ floor(e^T).
pub fn enumerate_rationals(t: f64) -> Vec<BigRational> {
    enumerate_rationals_bound(&floor_exp(t))
}

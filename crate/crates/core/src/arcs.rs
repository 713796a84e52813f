//! Analytic arcs φ: Δ_r → Pⁿ(ℂ) in an affine chart.
//!
//! An arc is a tuple of n+1 component evaluators; component 0 is
//! identically 1, so the arc is the chart z ↦ (1 : f_1(z) : … : f_n(z)).

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::rational::{BigRational, ProjectivePointQ};
use crate::series::{rational_to_f64, TruncatedSeries};
use crate::Result;

/// A closed-form component evaluator.
#[derive(Clone, Debug)]
pub enum ClosedForm {
    /// A polynomial in z with exact rational coefficients, c_0 + c_1 z + ….
    Poly(Vec<BigRational>),
    /// The exponential e^z.
    Exp,
}

/// Exact rational-value decision for a component at a rational parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RationalValue {
    /// The value is this rational, exactly.
    Exact(BigRational),
    /// The value is provably irrational.
    Irrational,
    /// Not decidable from the representation alone.
    Unknown,
}

impl ClosedForm {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            ClosedForm::Poly(coeffs) => {
                let mut acc = Complex64::zero();
                for c in coeffs.iter().rev() {
                    acc = acc * z + rational_to_f64(c);
                }
                acc
            }
            ClosedForm::Exp => z.exp(),
        }
    }

    pub fn eval_deriv(&self, z: Complex64) -> Complex64 {
        match self {
            ClosedForm::Poly(coeffs) => {
                let mut sum = Complex64::zero();
                let mut zp = Complex64::one();
                for (k, c) in coeffs.iter().enumerate().skip(1) {
                    sum += zp * rational_to_f64(c) * k as f64;
                    zp *= z;
                }
                sum
            }
            ClosedForm::Exp => z.exp(),
        }
    }

    /// Decides the exact value at a rational parameter.
    ///
    /// For the exponential the only rational value on rational arguments is
    /// e^0 = 1 (Hermite–Lindemann).
    pub fn rational_value(&self, z: &BigRational) -> RationalValue {
        match self {
            ClosedForm::Poly(coeffs) => {
                let mut acc = BigRational::zero();
                for c in coeffs.iter().rev() {
                    acc = acc * z + c;
                }
                RationalValue::Exact(acc)
            }
            ClosedForm::Exp => {
                if z.is_zero() {
                    RationalValue::Exact(BigRational::one())
                } else {
                    RationalValue::Irrational
                }
            }
        }
    }

    /// Taylor expansion at 0, truncated at `order`.
    pub fn series(&self, order: usize) -> TruncatedSeries {
        match self {
            ClosedForm::Poly(coeffs) => {
                let mut c = coeffs.clone();
                c.resize(order + 1, BigRational::zero());
                c.truncate(order + 1);
                TruncatedSeries::new(c)
            }
            ClosedForm::Exp => TruncatedSeries::exp(order),
        }
    }
}

/// One coordinate of an arc.
#[derive(Clone, Debug)]
pub enum ArcComponent {
    /// The constant 1 (the affine normalization of component 0).
    One,
    ClosedForm(ClosedForm),
    Series(TruncatedSeries),
    /// A truncated integral-curve series produced by the foliage module.
    OdeLeaf(TruncatedSeries),
}

impl ArcComponent {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            ArcComponent::One => Complex64::one(),
            ArcComponent::ClosedForm(cf) => cf.eval(z),
            ArcComponent::Series(s) | ArcComponent::OdeLeaf(s) => s.eval_complex(z),
        }
    }

    pub fn eval_deriv(&self, z: Complex64) -> Complex64 {
        match self {
            ArcComponent::One => Complex64::zero(),
            ArcComponent::ClosedForm(cf) => cf.eval_deriv(z),
            ArcComponent::Series(s) | ArcComponent::OdeLeaf(s) => s.derivative().eval_complex(z),
        }
    }

    pub fn rational_value(&self, z: &BigRational) -> RationalValue {
        match self {
            ArcComponent::One => RationalValue::Exact(BigRational::one()),
            ArcComponent::ClosedForm(cf) => cf.rational_value(z),
            // A truncated series determines the exact value only at the
            // expansion point.
            ArcComponent::Series(s) | ArcComponent::OdeLeaf(s) => {
                if z.is_zero() {
                    RationalValue::Exact(s.coeff(0).clone())
                } else {
                    RationalValue::Unknown
                }
            }
        }
    }

    /// Taylor expansion at 0 when the representation provides one.
    pub fn series(&self, order: usize) -> TruncatedSeries {
        match self {
            ArcComponent::One => TruncatedSeries::constant(BigRational::one(), order),
            ArcComponent::ClosedForm(cf) => cf.series(order),
            ArcComponent::Series(s) | ArcComponent::OdeLeaf(s) => s.truncate(order),
        }
    }
}

/// A holomorphic arc Δ_{r_max} → Pⁿ(ℂ) in the affine chart x_0 = 1.
#[derive(Clone, Debug)]
pub struct AnalyticArc {
    components: Vec<ArcComponent>,
    r_max: f64,
    center: Option<ProjectivePointQ>,
}

impl AnalyticArc {
    pub fn new(components: Vec<ArcComponent>, r_max: f64) -> Self {
        assert!(components.len() >= 2, "an arc needs at least two components");
        assert!(
            matches!(components[0], ArcComponent::One),
            "component 0 must be identically 1"
        );
        assert!(r_max > 0.0);
        let center = Self::center_of(&components);
        AnalyticArc {
            components,
            r_max,
            center,
        }
    }

    fn center_of(components: &[ArcComponent]) -> Option<ProjectivePointQ> {
        let zero = BigRational::zero();
        let mut vals = Vec::with_capacity(components.len());
        for c in components {
            match c.rational_value(&zero) {
                RationalValue::Exact(v) => vals.push(v),
                _ => return None,
            }
        }
        ProjectivePointQ::normalize(&vals).ok()
    }

    /// The line arc (1 : z).
    pub fn line(r_max: f64) -> Self {
        AnalyticArc::new(
            vec![
                ArcComponent::One,
                ArcComponent::ClosedForm(ClosedForm::Poly(vec![
                    BigRational::zero(),
                    BigRational::one(),
                ])),
            ],
            r_max,
        )
    }

    /// The parabola arc (1 : z : z²).
    pub fn parabola(r_max: f64) -> Self {
        AnalyticArc::new(
            vec![
                ArcComponent::One,
                ArcComponent::ClosedForm(ClosedForm::Poly(vec![
                    BigRational::zero(),
                    BigRational::one(),
                ])),
                ArcComponent::ClosedForm(ClosedForm::Poly(vec![
                    BigRational::zero(),
                    BigRational::zero(),
                    BigRational::one(),
                ])),
            ],
            r_max,
        )
    }

    /// The exponential graph arc (1 : z : e^z).
    pub fn exp_graph(r_max: f64) -> Self {
        AnalyticArc::new(
            vec![
                ArcComponent::One,
                ArcComponent::ClosedForm(ClosedForm::Poly(vec![
                    BigRational::zero(),
                    BigRational::one(),
                ])),
                ArcComponent::ClosedForm(ClosedForm::Exp),
            ],
            r_max,
        )
    }

    pub fn dimension(&self) -> usize {
        self.components.len() - 1
    }

    pub fn components(&self) -> &[ArcComponent] {
        &self.components
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    /// Rational center φ(0) when it exists.
    pub fn center(&self) -> Option<&ProjectivePointQ> {
        self.center.as_ref()
    }

    fn check_domain(&self, z: Complex64) -> Result<()> {
        let abs = z.norm();
        if abs >= self.r_max {
            return Err(Error::OutsideDomain {
                abs,
                r_max: self.r_max,
            });
        }
        Ok(())
    }

    /// Homogeneous coordinates (1, f_1(z), …, f_n(z)).
    pub fn eval(&self, z: Complex64) -> Result<Vec<Complex64>> {
        self.check_domain(z)?;
        Ok(self.components.iter().map(|c| c.eval(z)).collect())
    }

    /// Componentwise derivative (0, f_1'(z), …, f_n'(z)).
    pub fn eval_deriv(&self, z: Complex64) -> Result<Vec<Complex64>> {
        self.check_domain(z)?;
        Ok(self.components.iter().map(|c| c.eval_deriv(z)).collect())
    }

    /// Exact rational homogeneous coordinates at a rational parameter, when
    /// every component is decidable.
    pub fn rational_values(&self, z: &BigRational) -> Vec<RationalValue> {
        self.components.iter().map(|c| c.rational_value(z)).collect()
    }
}

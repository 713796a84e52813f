//! Homogeneous integer sections of O(d) on Pⁿ and their norms.
//!
//! A section is a degree-d form in n+1 variables with arbitrary-precision
//! integer coefficients, stored in graded-lexicographic monomial order.
//! Two metrics are supported on O(1): MAX, with
//! ‖s‖(x) = |s(x)| / (max_i |x_i|)^d, and FS (Fubini–Study), with
//! denominator (Σ |x_i|²)^{d/2}.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, Zero};

use crate::arcs::AnalyticArc;
use crate::rational::{ln_bigint, BigRational};
use crate::series::{rational_to_f64, TruncatedSeries};
use crate::Result;

/// Metric on O(1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    /// Continuous ℓ∞ metric; exact arithmetic at rational points.
    Max,
    /// Smooth Fubini–Study metric; used by Chern-form integrals.
    Fs,
}

/// A homogeneous integer-coefficient polynomial of degree d in n+1 variables.
#[derive(Clone, Debug)]
pub struct SectionPoly {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Vec<u32>, BigInt>,
    sup_cache_max: OnceLock<f64>,
    sup_cache_fs: OnceLock<f64>,
}

impl PartialEq for SectionPoly {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.degree == other.degree && self.terms == other.terms
    }
}
impl Eq for SectionPoly {}

impl SectionPoly {
    /// Builds a section from a term map; zero coefficients are dropped.
    pub fn new(nvars: usize, degree: u32, terms: BTreeMap<Vec<u32>, BigInt>) -> Self {
        let terms: BTreeMap<Vec<u32>, BigInt> =
            terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        assert!(!terms.is_empty(), "section must have a nonzero coefficient");
        for e in terms.keys() {
            assert_eq!(e.len(), nvars, "exponent tuple arity mismatch");
            assert_eq!(e.iter().sum::<u32>(), degree, "non-homogeneous term");
        }
        SectionPoly {
            nvars,
            degree,
            terms,
            sup_cache_max: OnceLock::new(),
            sup_cache_fs: OnceLock::new(),
        }
    }

    /// The monomial X_0^{e_0}···X_n^{e_n} with coefficient 1.
    pub fn monomial(exponents: Vec<u32>) -> Self {
        let nvars = exponents.len();
        let degree = exponents.iter().sum();
        let mut terms = BTreeMap::new();
        terms.insert(exponents, BigInt::from(1));
        SectionPoly::new(nvars, degree, terms)
    }

    /// Degree-d binary form Σ coeffs[i]·X^{d−i}·Y^{i} on P¹.
    pub fn from_p1_coeffs(degree: u32, coeffs: &[BigInt]) -> Self {
        assert_eq!(coeffs.len(), degree as usize + 1);
        let mut terms = BTreeMap::new();
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                terms.insert(vec![degree - i as u32, i as u32], c.clone());
            }
        }
        SectionPoly::new(2, degree, terms)
    }

    /// Builds from a dense coefficient vector in graded-lex monomial order
    /// (the order produced by [`monomials_of_degree`]).
    pub fn from_dense(nvars: usize, degree: u32, coeffs: &[BigInt]) -> Self {
        let monos = monomials_of_degree(nvars, degree);
        assert_eq!(coeffs.len(), monos.len());
        let mut terms = BTreeMap::new();
        for (m, c) in monos.into_iter().zip(coeffs) {
            if !c.is_zero() {
                terms.insert(m, c.clone());
            }
        }
        SectionPoly::new(nvars, degree, terms)
    }

    /// Dense coefficient vector in graded-lex order, including zeros.
    pub fn to_dense(&self) -> Vec<BigInt> {
        monomials_of_degree(self.nvars, self.degree)
            .into_iter()
            .map(|m| self.terms.get(&m).cloned().unwrap_or_else(BigInt::zero))
            .collect()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .expect("nonempty")
    }

    /// log max |coefficient|.
    pub fn log_max_coeff(&self) -> f64 {
        ln_bigint(&self.max_abs_coeff())
    }

    pub fn eval_complex(&self, coords: &[Complex64]) -> Complex64 {
        assert_eq!(coords.len(), self.nvars);
        let mut acc = Complex64::zero();
        for (e, c) in &self.terms {
            let mut m = Complex64::new(rational_to_f64(&BigRational::from_integer(c.clone())), 0.0);
            for (x, &k) in coords.iter().zip(e) {
                m *= x.powu(k);
            }
            acc += m;
        }
        acc
    }

    /// Exact evaluation at integer coordinates.
    pub fn eval_bigint(&self, coords: &[BigInt]) -> BigInt {
        assert_eq!(coords.len(), self.nvars);
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (x, &k) in coords.iter().zip(e) {
                m *= x.pow(k);
            }
            acc += m;
        }
        acc
    }

    /// Exact evaluation at rational coordinates.
    pub fn eval_rational(&self, coords: &[BigRational]) -> BigRational {
        assert_eq!(coords.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut m = BigRational::from_integer(c.clone());
            for (x, &k) in coords.iter().zip(e) {
                m *= x.pow(k as i32);
            }
            acc += m;
        }
        acc
    }

    /// ‖s‖(x) at homogeneous coordinates x under the chosen metric.
    pub fn norm_at(&self, coords: &[Complex64], metric: Metric) -> f64 {
        let num = self.eval_complex(coords).norm();
        let denom = match metric {
            Metric::Max => coords
                .iter()
                .map(|c| c.norm())
                .fold(0.0_f64, f64::max)
                .powi(self.degree as i32),
            Metric::Fs => coords
                .iter()
                .map(|c| c.norm_sqr())
                .sum::<f64>()
                .powf(self.degree as f64 / 2.0),
        };
        num / denom
    }

    /// ‖φ*(s)‖(z) for an arc in the affine chart.
    pub fn pullback_norm(&self, arc: &AnalyticArc, z: Complex64, metric: Metric) -> Result<f64> {
        let coords = arc.eval(z)?;
        Ok(self.norm_at(&coords, metric))
    }

    /// Exact composition of the section with the arc's component series.
    pub fn pullback_series(&self, arc: &AnalyticArc, order: usize) -> TruncatedSeries {
        let comps: Vec<TruncatedSeries> =
            arc.components().iter().map(|c| c.series(order)).collect();
        let mut acc = TruncatedSeries::zero(order);
        for (e, c) in &self.terms {
            let mut m = TruncatedSeries::constant(BigRational::from_integer(c.clone()), order);
            for (s, &k) in comps.iter().zip(e) {
                m = m.mul(&s.pow(k));
            }
            acc = acc.add(&m);
        }
        acc
    }

    /// Lower-biased estimate of sup_{Pⁿ(ℂ)} ‖s‖ by deterministic
    /// low-discrepancy sampling refined by cyclic coordinate ascent.
    ///
    /// The result for the default budget is cached per metric; callers that
    /// need a different budget can use [`SectionPoly::sup_norm_with`].
    pub fn sup_norm(&self, metric: Metric) -> f64 {
        let cache = match metric {
            Metric::Max => &self.sup_cache_max,
            Metric::Fs => &self.sup_cache_fs,
        };
        *cache.get_or_init(|| self.sup_norm_with(metric, 512))
    }

    /// Sup-norm estimate with an explicit sampling budget.
    pub fn sup_norm_with(&self, metric: Metric, samples: usize) -> f64 {
        assert!(samples >= 1);
        match metric {
            Metric::Max => self.sup_norm_max(samples),
            Metric::Fs => self.sup_norm_fs(samples),
        }
    }

    // For the MAX metric the sup is attained with max |x_i| = 1; fixing the
    // pivot coordinate to 1 (after a global phase) and the others on the
    // closed unit disk, the maximum-modulus principle pushes the rest to the
    // unit circle.  Search is over phase angles per pivot.
    fn sup_norm_max(&self, samples: usize) -> f64 {
        let n = self.nvars;
        let mut best = 0.0_f64;
        for pivot in 0..n {
            let dim = n - 1;
            let eval = |angles: &[f64]| {
                let mut coords = Vec::with_capacity(n);
                let mut it = angles.iter();
                for i in 0..n {
                    if i == pivot {
                        coords.push(Complex64::new(1.0, 0.0));
                    } else {
                        let t = *it.next().unwrap();
                        coords.push(Complex64::from_polar(1.0, t));
                    }
                }
                self.eval_complex(&coords).norm()
            };
            best = best.max(search_max(dim, samples, &eval));
        }
        best
    }

    fn sup_norm_fs(&self, samples: usize) -> f64 {
        let n = self.nvars;
        let mut best = 0.0_f64;
        for pivot in 0..n {
            // pivot coordinate fixed to 1; others r e^{iθ} with r ∈ [0, 1].
            let dim = 2 * (n - 1);
            let eval = |params: &[f64]| {
                let mut coords = Vec::with_capacity(n);
                let mut it = params.chunks(2);
                for i in 0..n {
                    if i == pivot {
                        coords.push(Complex64::new(1.0, 0.0));
                    } else {
                        let p = it.next().unwrap();
                        let r = p[0].clamp(0.0, 1.0);
                        coords.push(Complex64::from_polar(r, p[1]));
                    }
                }
                self.norm_at(&coords, Metric::Fs)
            };
            best = best.max(search_max(dim, samples, &eval));
        }
        best
    }
}

/// All exponent tuples of length `nvars` summing to `degree`, in
/// lexicographically descending order on the tuple (graded-lex within the
/// fixed degree).
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(nvars);
    fn rec(nvars: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if current.len() == nvars - 1 {
            current.push(remaining);
            out.push(current.clone());
            current.pop();
            return;
        }
        for e in (0..=remaining).rev() {
            current.push(e);
            rec(nvars, remaining - e, current, out);
            current.pop();
        }
    }
    rec(nvars, degree, &mut current, &mut out);
    out
}

/// Deterministic global-ish maximization over [0, 2π)^dim (angles) or mixed
/// parameter boxes: golden-ratio lattice multistart plus cyclic coordinate
/// ascent with step halving.
fn search_max(dim: usize, samples: usize, f: &dyn Fn(&[f64]) -> f64) -> f64 {
    if dim == 0 {
        return f(&[]);
    }
    // Kronecker lattice directions from square roots of primes.
    const PRIMES: [f64; 12] = [2.0, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0, 23.0, 29.0, 31.0, 37.0];
    let alphas: Vec<f64> = (0..dim).map(|i| PRIMES[i % PRIMES.len()].sqrt().fract()).collect();
    let tau = std::f64::consts::TAU;

    let mut starts: Vec<(f64, Vec<f64>)> = Vec::new();
    for k in 0..samples {
        let x: Vec<f64> = alphas.iter().map(|a| ((k as f64 + 0.5) * a).fract() * tau).collect();
        let v = f(&x);
        starts.push((v, x));
    }
    starts.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    starts.truncate(4);

    let mut best = starts[0].0;
    for (_, mut x) in starts {
        let mut step = 0.5;
        while step > 1e-10 {
            let mut improved = false;
            for i in 0..dim {
                for delta in [step, -step] {
                    let old = x[i];
                    x[i] = old + delta;
                    let v = f(&x);
                    if v > best {
                        best = v;
                        improved = true;
                    } else {
                        x[i] = old;
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x0() -> SectionPoly {
        SectionPoly::monomial(vec![1, 0])
    }

    fn x1() -> SectionPoly {
        SectionPoly::monomial(vec![0, 1])
    }

    #[test]
    fn monomial_count_matches_binomial() {
        // C(n+d, n) monomials of degree d in n+1 variables.
        assert_eq!(monomials_of_degree(2, 2).len(), 3);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(3, 3).len(), 10);
    }

    #[test]
    fn pullback_norm_examples() {
        let arc = AnalyticArc::line(1.0);
        // s = X1 vanishes at (1 : 0).
        let v = x1()
            .pullback_norm(&arc, Complex64::zero(), Metric::Max)
            .unwrap();
        assert_eq!(v, 0.0);
        // s = X0 at z = 0.5 under MAX: 1 / max(1, 0.5) = 1.
        let v = x0()
            .pullback_norm(&arc, Complex64::new(0.5, 0.0), Metric::Max)
            .unwrap();
        assert!((v - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pullback_out_of_domain() {
        let arc = AnalyticArc::line(1.0);
        let s = SectionPoly::monomial(vec![2, 0]);
        assert!(s
            .pullback_norm(&arc, Complex64::new(1.999, 0.0), Metric::Max)
            .is_err());
    }

    #[test]
    fn sup_norm_closed_forms_max() {
        // X0^d has sup 1 for all d under MAX.
        for d in [1u32, 2, 3, 5] {
            let s = SectionPoly::monomial(vec![d, 0]);
            assert!((s.sup_norm(Metric::Max) - 1.0).abs() < 1e-9, "d = {d}");
        }
        // X0·X1: closed-form maximization of |xy|/max(|x|,|y|)² gives 1.
        let s = SectionPoly::from_p1_coeffs(2, &[0.into(), 1.into(), 0.into()]);
        assert!((s.sup_norm(Metric::Max) - 1.0).abs() < 1e-9);
        // X0 + X1: sup 2, attained at (1 : 1).
        let s = SectionPoly::from_p1_coeffs(1, &[1.into(), 1.into()]);
        assert!((s.sup_norm(Metric::Max) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn sup_norm_fs_x0() {
        // |x| / sqrt(|x|² + |y|²) has sup 1 at (1 : 0).
        assert!((x0().sup_norm(Metric::Fs) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn liouville_exact_bound_at_integer_points() {
        // Nonzero integer numerator forces ‖s‖(p) ≥ e^{-d·h(p)} exactly.
        let s = SectionPoly::from_p1_coeffs(1, &[1.into(), (-1).into()]);
        let coords = [BigInt::from(1), BigInt::from(2)];
        let num = s.eval_bigint(&coords);
        assert_eq!(num, BigInt::from(-1));
        // ‖s‖(p) = |−1| / 2¹ = 1/2 = e^{−1·h(p)} since h = log 2.
    }

    proptest! {
        #[test]
        fn norm_scale_invariance(
            re in -2.0f64..2.0, im in -2.0f64..2.0,
            lr in prop_oneof![-3.0f64..-0.1, 0.1f64..3.0], li in -3.0f64..3.0,
        ) {
            let s = SectionPoly::from_p1_coeffs(2, &[2.into(), (-3).into(), 1.into()]);
            let x = [Complex64::new(1.0, 0.0), Complex64::new(re, im)];
            let lambda = Complex64::new(lr, li);
            let xs = [x[0] * lambda, x[1] * lambda];
            for m in [Metric::Max, Metric::Fs] {
                let a = s.norm_at(&x, m);
                let b = s.norm_at(&xs, m);
                prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
            }
        }
    }
}

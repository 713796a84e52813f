//! Area estimates for exceptional sets of small products and small
//! holomorphic norms.
//!
//! All estimates are seeded Monte Carlo; a run is reproducible from
//! (seed, samples) alone.  The reported standard error is the binomial
//! error of the hit fraction scaled by the sampling area.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::disk::count_zeros;
use crate::error::Error;
use crate::Result;

/// Root multiset a_1..a_n with the radius-sum budget H.
#[derive(Clone, Debug)]
pub struct RootConfig {
    pub roots: Vec<Complex64>,
    pub h: f64,
}

impl RootConfig {
    pub fn new(roots: Vec<Complex64>, h: f64) -> Self {
        assert!(!roots.is_empty(), "root list must be nonempty");
        assert!(h > 0.0);
        RootConfig { roots, h }
    }
}

/// Axis-aligned sampling rectangle.
#[derive(Clone, Copy, Debug)]
pub struct Rect {
    pub min: Complex64,
    pub max: Complex64,
}

impl Rect {
    pub fn new(min: Complex64, max: Complex64) -> Self {
        assert!(min.re < max.re && min.im < max.im);
        Rect { min, max }
    }

    pub fn area(&self) -> f64 {
        (self.max.re - self.min.re) * (self.max.im - self.min.im)
    }

    fn contains_disk(&self, center: Complex64, radius: f64) -> bool {
        center.re - radius >= self.min.re
            && center.re + radius <= self.max.re
            && center.im - radius >= self.min.im
            && center.im + radius <= self.max.im
    }
}

/// Monte-Carlo (or grid) area measurement with its bound check.
#[derive(Clone, Copy, Debug)]
pub struct AreaEstimate {
    pub value: f64,
    pub std_error: f64,
    pub bound: f64,
    /// value ≤ bound + 3·std_error.
    pub pass: bool,
    pub seed: u64,
    pub samples: usize,
}

/// Area of { z : Π |z − a_i| ≤ (H/2e)^n }, estimated over `bbox`; the
/// Bloch–Cartan bound is πH².
pub fn exceptional_area(
    cfg: &RootConfig,
    bbox: Rect,
    samples: usize,
    seed: u64,
) -> Result<AreaEstimate> {
    if samples < 10_000 {
        return Err(Error::Precondition(format!(
            "exceptional_area needs at least 1e4 samples, got {samples}"
        )));
    }
    for a in &cfg.roots {
        if !bbox.contains_disk(*a, cfg.h) {
            return Err(Error::Precondition(
                "bbox too small: it must contain every root inflated by H".into(),
            ));
        }
    }
    let n = cfg.roots.len() as f64;
    let log_threshold = n * (cfg.h / (2.0 * std::f64::consts::E)).ln();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0usize;
    for _ in 0..samples {
        let z = Complex64::new(
            rng.gen_range(bbox.min.re..bbox.max.re),
            rng.gen_range(bbox.min.im..bbox.max.im),
        );
        let log_prod: f64 = cfg.roots.iter().map(|a| (z - a).norm().ln()).sum();
        if log_prod <= log_threshold {
            hits += 1;
        }
    }
    let p = hits as f64 / samples as f64;
    let value = bbox.area() * p;
    let std_error = bbox.area() * (p * (1.0 - p) / samples as f64).sqrt();
    let bound = std::f64::consts::PI * cfg.h * cfg.h;
    Ok(AreaEstimate {
        value,
        std_error,
        bound,
        pass: value <= bound + 3.0 * std_error,
        seed,
        samples,
    })
}

/// Sup of log|f| over the closed disk of radius `r3`; by the maximum
/// principle the sup sits on the boundary circle, sampled at 2¹⁴ points.
pub fn sup_log_abs_on_disk<F>(f: &F, r3: f64) -> f64
where
    F: Fn(Complex64) -> Complex64,
{
    let n = 1 << 14;
    let mut best = f64::NEG_INFINITY;
    for k in 0..n {
        let theta = std::f64::consts::TAU * k as f64 / n as f64;
        best = best.max(f(Complex64::from_polar(r3, theta)).norm().ln());
    }
    best
}

/// Area of the sublevel set of log|f| in Δ_r below the threshold
/// −(2 + ln(1/η)/ln(3/2))·sup_{Δ_{3r}} log|f| + 3·log|f(0)|;
/// the bound is 4πe²η².
pub fn small_norm_area<F>(
    f: &F,
    r: f64,
    eta: f64,
    samples: usize,
    seed: u64,
) -> Result<AreaEstimate>
where
    F: Fn(Complex64) -> Complex64,
{
    let f0 = f(Complex64::new(0.0, 0.0));
    if f0.norm() == 0.0 {
        return Err(Error::Precondition(
            "f(0) = 0; use small_norm_area_vanishing".into(),
        ));
    }
    small_norm_area_with_offset(f, r, eta, 3.0 * f0.norm().ln(), samples, seed)
}

/// Variant for f = ζ^i·h with h(0) ≠ 0: the offset becomes
/// 3·(log|h(0)| + i·log(3r)).  h(0) is recovered by a Cauchy integral for
/// the i-th Taylor coefficient on a small circle.
pub fn small_norm_area_vanishing<F>(
    f: &F,
    order: usize,
    r: f64,
    eta: f64,
    samples: usize,
    seed: u64,
) -> Result<AreaEstimate>
where
    F: Fn(Complex64) -> Complex64,
{
    if order == 0 {
        return small_norm_area(f, r, eta, samples, seed);
    }
    let h0 = taylor_coefficient(f, order, r / 10.0);
    if h0.norm() == 0.0 {
        return Err(Error::Precondition(
            "declared vanishing order does not match f".into(),
        ));
    }
    let offset = 3.0 * (h0.norm().ln() + order as f64 * (3.0 * r).ln());
    small_norm_area_with_offset(f, r, eta, offset, samples, seed)
}

/// Vanishing order of f at the origin, detected by a zero count at radius
/// r/10 (all those zeros coincide with the origin when f = ζ^i·h with h
/// zero-free near 0).
pub fn detect_vanishing_order<F>(f: &F, r: f64) -> Result<usize>
where
    F: Fn(Complex64) -> Complex64,
{
    Ok(count_zeros(f, r / 10.0)?.count)
}

fn small_norm_area_with_offset<F>(
    f: &F,
    r: f64,
    eta: f64,
    offset: f64,
    samples: usize,
    seed: u64,
) -> Result<AreaEstimate>
where
    F: Fn(Complex64) -> Complex64,
{
    if !(0.0 < r && r < 1.0 / 3.0) {
        return Err(Error::Precondition(format!(
            "small_norm_area needs 0 < r < 1/3, got {r}"
        )));
    }
    if !(0.0 < eta && eta <= 1.0) {
        return Err(Error::Precondition(format!(
            "small_norm_area needs eta in (0, 1], got {eta}"
        )));
    }
    let sup3r = sup_log_abs_on_disk(f, 3.0 * r);
    let threshold = -(2.0 + (1.0 / eta).ln() / 1.5_f64.ln()) * sup3r + offset;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0usize;
    for _ in 0..samples {
        // Uniform point of the disk of radius r.
        let rho = r * rng.gen_range(0.0_f64..1.0).sqrt();
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let z = Complex64::from_polar(rho, theta);
        if f(z).norm().ln() < threshold {
            hits += 1;
        }
    }
    let disk_area = std::f64::consts::PI * r * r;
    let p = hits as f64 / samples as f64;
    let value = disk_area * p;
    let std_error = disk_area * (p * (1.0 - p) / samples as f64).sqrt();
    let e2 = std::f64::consts::E * std::f64::consts::E;
    let bound = 4.0 * std::f64::consts::PI * e2 * eta * eta;
    Ok(AreaEstimate {
        value,
        std_error,
        bound,
        pass: value <= bound + 3.0 * std_error,
        seed,
        samples,
    })
}

/// i-th Taylor coefficient of f at 0 via the Cauchy integral on |ζ| = rho.
fn taylor_coefficient<F>(f: &F, i: usize, rho: f64) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
{
    let n = 4096;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let theta = std::f64::consts::TAU * k as f64 / n as f64;
        let zeta = Complex64::from_polar(rho, theta);
        acc += f(zeta) / zeta.powu(i as u32);
    }
    acc / n as f64
}

//! Potential theory and value distribution on concentric disks.
//!
//! Domains are pairs of concentric disks 0 < r < R, where the Green
//! function of the ambient disk is known in closed form:
//! g(z, w) = log |R² − conj(w)·z| − log(R·|z − w|).
//!
//! Contour integrals use composite trapezoid quadrature, which is
//! spectrally accurate for periodic analytic integrands; point counts are
//! doubled until two successive values agree.

use num_complex::Complex64;

use crate::arcs::AnalyticArc;
use crate::error::Error;
use crate::section::{Metric, SectionPoly};
use crate::Result;

/// Concentric inner/ambient disk pair 0 < r < R.
#[derive(Clone, Copy, Debug)]
pub struct DiskDomain {
    pub r: f64,
    pub ambient: f64,
}

impl DiskDomain {
    pub fn new(r: f64, ambient: f64) -> Self {
        assert!(0.0 < r && r < ambient, "need 0 < r < R");
        DiskDomain { r, ambient }
    }
}

/// Result of an argument-principle zero count.
#[derive(Clone, Copy, Debug)]
pub struct ZeroCountReport {
    pub count: usize,
    pub residual: f64,
    /// Radius actually used (may be perturbed from the request).
    pub radius: f64,
}

/// Terms of the First Main Theorem identity and their mismatch.
#[derive(Clone, Debug)]
pub struct FmtReport {
    pub characteristic: f64,
    pub boundary_term: f64,
    pub interior_sum: f64,
    pub point_term: f64,
    pub residual: f64,
    /// Vanishing order of the pullback at the base point (0 in the generic
    /// case); nonzero orders use the jet term with the calibrated constant.
    pub center_order: usize,
    /// Jet-term constant, calibrated once for the flat tangent metric.
    pub jet_constant: f64,
}

/// Pass/fail outcome with the measured slack.
#[derive(Clone, Copy, Debug)]
pub struct CheckReport {
    pub pass: bool,
    pub margin: f64,
}

/// Two-sided report for the degree-of-divisor bound.
#[derive(Clone, Debug)]
pub struct DegreeBoundReport {
    pub degree_in_disk: usize,
    pub rhs: f64,
    pub green_min: f64,
    pub characteristic_bound: f64,
    pub log_sup: f64,
    pub log_w: f64,
    pub pass: bool,
}

/// Green function of the disk of radius `ambient` at (z, w).
pub fn green_disk(z: Complex64, w: Complex64, ambient: f64) -> Result<f64> {
    if z.norm() >= ambient || w.norm() >= ambient {
        return Err(Error::OutsideDomain {
            abs: z.norm().max(w.norm()),
            r_max: ambient,
        });
    }
    if z == w {
        return Err(Error::DiagonalSingularity);
    }
    let num = (Complex64::new(ambient * ambient, 0.0) - w.conj() * z).norm();
    Ok(num.ln() - (ambient * (z - w).norm()).ln())
}

/// Bracket of log d(z, w) + g(z, w) over a grid of U × U.
///
/// For the Euclidean metric the log singularities cancel exactly and the
/// combination equals log(|R² − conj(w)·z| / R), so it is evaluated in the
/// cancelled form and stays finite through the diagonal.
pub fn green_distance_defect(domain: DiskDomain, grid: usize) -> Result<(f64, f64)> {
    if grid < 8 {
        return Err(Error::Precondition(format!(
            "green_distance_defect needs grid >= 8, got {grid}"
        )));
    }
    let pts = polar_grid(domain.r, grid);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &z in &pts {
        for &w in &pts {
            let v = green_plus_log_distance(z, w, domain.ambient);
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    Ok((lo, hi))
}

/// log|z − w| + g(z, w) in the cancelled closed form.
pub fn green_plus_log_distance(z: Complex64, w: Complex64, ambient: f64) -> f64 {
    let num = (Complex64::new(ambient * ambient, 0.0) - w.conj() * z).norm();
    (num / ambient).ln()
}

/// Polar grid of the closed disk of radius r (includes center and boundary
/// rings slightly inside).
fn polar_grid(r: f64, n: usize) -> Vec<Complex64> {
    let mut pts = vec![Complex64::new(0.0, 0.0)];
    for i in 1..=n {
        let rho = r * i as f64 / n as f64;
        for k in 0..n {
            let theta = std::f64::consts::TAU * k as f64 / n as f64;
            pts.push(Complex64::from_polar(rho, theta));
        }
    }
    pts
}

/// Reconstructs f(z) from boundary values of its real part via the Poisson
/// formula on the circle of radius R, plus i·Im f(0).
pub fn poisson_reconstruct<F>(f: F, ambient: f64, z: Complex64, quad_points: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    if quad_points < 16 {
        return Err(Error::BadQuadrature(format!(
            "poisson_reconstruct needs at least 16 quadrature points, got {quad_points}"
        )));
    }
    if z.norm() >= ambient {
        return Err(Error::OutsideDomain {
            abs: z.norm(),
            r_max: ambient,
        });
    }
    let n = quad_points;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let theta = std::f64::consts::TAU * k as f64 / n as f64;
        let zeta = Complex64::from_polar(ambient, theta);
        let u = f(zeta).re;
        acc += u * (zeta + z) / (zeta - z);
    }
    acc /= n as f64;
    let v0 = f(Complex64::new(0.0, 0.0)).im;
    Ok(acc + Complex64::new(0.0, v0))
}

/// Number of zeros of f in |ζ| < r by the argument principle, with the
/// quadrature residual; retries at r·(1 ± 10⁻³) when the contour passes too
/// close to a zero.
pub fn count_zeros<F>(f: &F, r: f64) -> Result<ZeroCountReport>
where
    F: Fn(Complex64) -> Complex64,
{
    let mut last_err = 0.0;
    for radius in [r, r * (1.0 + 1e-3), r * (1.0 - 1e-3)] {
        match count_zeros_at(f, radius) {
            Ok(report) => return Ok(report),
            Err(Error::ContourNearZero { residual }) => last_err = residual,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ContourNearZero { residual: last_err })
}

fn count_zeros_at<F>(f: &F, r: f64) -> Result<ZeroCountReport>
where
    F: Fn(Complex64) -> Complex64,
{
    // Winding of f along |ζ| = r via phase continuation; refined until every
    // angular step is small.  The residual compares the trapezoid value of
    // (1/2πi) ∮ f'/f (numeric derivative) with the integer winding.
    let mut n = 256usize;
    loop {
        let mut ok = true;
        let mut winding = 0.0f64;
        let mut prev_arg = 0.0f64;
        let mut scale: f64 = 0.0;
        for k in 0..=n {
            let theta = std::f64::consts::TAU * k as f64 / n as f64;
            let v = f(Complex64::from_polar(r, theta));
            scale = scale.max(v.norm());
            if v.norm() < 1e-13 * (1.0 + scale) {
                return Err(Error::ContourNearZero { residual: 1.0 });
            }
            let a = v.arg();
            if k > 0 {
                let mut d = a - prev_arg;
                while d > std::f64::consts::PI {
                    d -= std::f64::consts::TAU;
                }
                while d < -std::f64::consts::PI {
                    d += std::f64::consts::TAU;
                }
                if d.abs() > 1.5 {
                    ok = false;
                    break;
                }
                winding += d;
            }
            prev_arg = a;
        }
        if ok {
            let turns = winding / std::f64::consts::TAU;
            let count = turns.round();
            let residual = quadrature_residual(f, r, n, count);
            if residual >= 0.5 || count < -0.5 {
                return Err(Error::ContourNearZero { residual });
            }
            return Ok(ZeroCountReport {
                count: count as usize,
                residual,
                radius: r,
            });
        }
        n *= 2;
        if n > 1 << 20 {
            return Err(Error::ContourNearZero { residual: 1.0 });
        }
    }
}

fn quadrature_residual<F>(f: &F, r: f64, n: usize, count: f64) -> f64
where
    F: Fn(Complex64) -> Complex64,
{
    // (1/2πi) ∮ f'/f dζ = (1/n) Σ_k ζ_k f'(ζ_k)/f(ζ_k) by trapezoid, with a
    // central-difference derivative.
    let h = 1e-6 * r;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let theta = std::f64::consts::TAU * k as f64 / n as f64;
        let zeta = Complex64::from_polar(r, theta);
        let df = (f(zeta + h) - f(zeta - h)) / (2.0 * h);
        acc += zeta * df / f(zeta);
    }
    acc /= n as f64;
    ((acc.re - count).powi(2) + acc.im.powi(2)).sqrt()
}

/// Jensen-formula residual for f with known zero list, base radius r.
pub fn jensen_residual<F>(f: &F, zeros: &[Complex64], r: f64) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64,
{
    let f0 = f(Complex64::new(0.0, 0.0));
    if f0.norm() == 0.0 {
        return Err(Error::Precondition(
            "jensen_residual needs f(0) != 0; factor out the power of z first".into(),
        ));
    }
    let mean = circle_mean(|z| f(z).norm().ln(), r);
    let interior: f64 = zeros
        .iter()
        .filter(|a| a.norm() < r)
        .map(|a| (r / a.norm()).ln())
        .sum();
    Ok((f0.norm().ln() - mean + interior).abs())
}

/// Trapezoid mean of g over the circle of radius r, doubling until two
/// successive levels agree to 1e-9 (or a cap is hit).
fn circle_mean<G>(g: G, r: f64) -> f64
where
    G: Fn(Complex64) -> f64,
{
    let mut n = 64usize;
    let mut prev = f64::NAN;
    loop {
        let mut acc = 0.0;
        for k in 0..n {
            let theta = std::f64::consts::TAU * k as f64 / n as f64;
            acc += g(Complex64::from_polar(r, theta));
        }
        let v = acc / n as f64;
        if (v - prev).abs() < 1e-9 || n >= 1 << 16 {
            return v;
        }
        prev = v;
        n *= 2;
    }
}

/// Log of the Fubini–Study chart potential v(w) = ½ log Σ |f_i(w)|².
fn fs_potential(arc: &AnalyticArc, w: Complex64) -> f64 {
    let coords = arc.components().iter().map(|c| c.eval(w));
    0.5 * coords.map(|c| c.norm_sqr()).sum::<f64>().ln()
}

/// Radial derivative of the FS potential at w = t·e^{iθ}.
fn fs_potential_radial(arc: &AnalyticArc, w: Complex64, dir: Complex64) -> f64 {
    let vals: Vec<Complex64> = arc.components().iter().map(|c| c.eval(w)).collect();
    let ders: Vec<Complex64> = arc.components().iter().map(|c| c.eval_deriv(w)).collect();
    let s: f64 = vals.iter().map(|c| c.norm_sqr()).sum();
    let num: Complex64 = vals
        .iter()
        .zip(&ders)
        .map(|(v, d)| d * v.conj())
        .sum();
    (dir * num).re / s
}

/// Nevanlinna characteristic T(0, O(1), r) of the arc by nested quadrature:
/// T = ∫₀^r dt/t ∫_{|w|<t} φ*(c₁) with the FS Chern form, the inner
/// integral reduced to a radial-derivative circle average.
pub fn characteristic(arc: &AnalyticArc, r: f64, quad: usize) -> Result<f64> {
    if r >= arc.r_max() {
        return Err(Error::OutsideDomain {
            abs: r,
            r_max: arc.r_max(),
        });
    }
    let quad = quad.max(16);
    // A(t)/t = (1/2π) ∫ ∂v/∂ρ(t e^{iθ}) dθ; integrate in t by Simpson.
    let m = if quad % 2 == 0 { quad } else { quad + 1 };
    let ht = r / m as f64;
    let integrand = |t: f64| -> f64 {
        if t == 0.0 {
            return 0.0;
        }
        let mut acc = 0.0;
        for k in 0..quad {
            let theta = std::f64::consts::TAU * k as f64 / quad as f64;
            let dir = Complex64::from_polar(1.0, theta);
            acc += fs_potential_radial(arc, dir * t, dir);
        }
        acc / quad as f64
    };
    let mut total = integrand(0.0) + integrand(r);
    for k in 1..m {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        total += w * integrand(ht * k as f64);
    }
    Ok(total * ht / 3.0)
}

/// Independent boundary route for the same characteristic:
/// T(0, O(1), r) = mean_{|w|=r} v(w) − v(0) with v the FS potential.
pub fn characteristic_boundary(arc: &AnalyticArc, r: f64) -> Result<f64> {
    if r >= arc.r_max() {
        return Err(Error::OutsideDomain {
            abs: r,
            r_max: arc.r_max(),
        });
    }
    let mean = circle_mean(|w| fs_potential(arc, w), r);
    Ok(mean - fs_potential(arc, Complex64::new(0.0, 0.0)))
}

/// Characteristic with an off-center base point w₀ over the disk of radius
/// `ambient`, computed through the harmonic (Poisson) measure seen from w₀.
pub fn characteristic_based(arc: &AnalyticArc, w0: Complex64, ambient: f64) -> Result<f64> {
    if w0.norm() >= ambient || ambient >= arc.r_max() {
        return Err(Error::OutsideDomain {
            abs: w0.norm().max(ambient),
            r_max: arc.r_max(),
        });
    }
    let mean = circle_mean(
        |zeta| {
            let p = (ambient * ambient - w0.norm_sqr()) / (zeta - w0).norm_sqr();
            p * fs_potential(arc, zeta)
        },
        ambient,
    );
    Ok(mean - fs_potential(arc, w0))
}

/// Zeros of f in the open disk of radius r, with multiplicities, located by
/// quadtree subdivision with per-cell winding counts, refined to 1e-8 boxes.
pub fn zeros_in_disk<F>(f: &F, r: f64) -> Result<Vec<(Complex64, usize)>>
where
    F: Fn(Complex64) -> Complex64,
{
    let total = count_zeros(f, r)?;
    let mut found: Vec<(Complex64, usize)> = Vec::new();
    if total.count > 0 {
        subdivide(f, Complex64::new(0.0, 0.0), total.radius * 1.0001, &mut found)?;
    }
    // Keep only zeros strictly inside the (possibly perturbed) contour.
    found.retain(|(z, _)| z.norm() < total.radius);
    let sum: usize = found.iter().map(|(_, m)| m).sum();
    if sum != total.count {
        return Err(Error::Precondition(format!(
            "zero location found {sum} zeros, contour count is {}",
            total.count
        )));
    }
    Ok(found)
}

fn subdivide<F>(
    f: &F,
    center: Complex64,
    half: f64,
    out: &mut Vec<(Complex64, usize)>,
) -> Result<()>
where
    F: Fn(Complex64) -> Complex64,
{
    let count = rect_winding(f, center, half)?;
    if count == 0 {
        return Ok(());
    }
    if half < 1e-8 {
        out.push((center, count));
        return Ok(());
    }
    let q = half / 2.0;
    for (dx, dy) in [(-q, -q), (q, -q), (-q, q), (q, q)] {
        subdivide(f, center + Complex64::new(dx, dy), q, out)?;
    }
    Ok(())
}

/// Winding number of f along the boundary of the square |Re z − c| ≤ h,
/// |Im z − c| ≤ h; jiggles the square when a zero sits on the boundary.
fn rect_winding<F>(f: &F, center: Complex64, half: f64) -> Result<usize>
where
    F: Fn(Complex64) -> Complex64,
{
    'grow: for attempt in 0..6 {
        let h = half * (1.0 + 0.013 * attempt as f64);
        let mut n = 64usize;
        loop {
            let mut winding = 0.0f64;
            let mut prev = 0.0f64;
            let mut scale: f64 = 0.0;
            let per = 4 * n;
            let mut bad = false;
            for k in 0..=per {
                let z = square_point(center, h, k as f64 / per as f64);
                let v = f(z);
                scale = scale.max(v.norm());
                if v.norm() < 1e-12 * (1.0 + scale) {
                    continue 'grow;
                }
                let a = v.arg();
                if k > 0 {
                    let mut d = a - prev;
                    while d > std::f64::consts::PI {
                        d -= std::f64::consts::TAU;
                    }
                    while d < -std::f64::consts::PI {
                        d += std::f64::consts::TAU;
                    }
                    if d.abs() > 1.5 {
                        bad = true;
                        break;
                    }
                    winding += d;
                }
                prev = a;
            }
            if !bad {
                let turns = winding / std::f64::consts::TAU;
                if (turns - turns.round()).abs() > 0.25 || turns.round() < -0.5 {
                    continue 'grow;
                }
                return Ok(turns.round() as usize);
            }
            n *= 2;
            if n > 1 << 16 {
                continue 'grow;
            }
        }
    }
    Err(Error::ContourNearZero { residual: 1.0 })
}

/// Point on the square boundary at parameter t ∈ [0, 1).
fn square_point(center: Complex64, h: f64, t: f64) -> Complex64 {
    let s = (t * 4.0).fract();
    let side = (t * 4.0).floor() as usize % 4;
    let (x, y) = match side {
        0 => (-h + 2.0 * h * s, -h),
        1 => (h, -h + 2.0 * h * s),
        2 => (h - 2.0 * h * s, h),
        _ => (-h, h - 2.0 * h * s),
    };
    center + Complex64::new(x, y)
}

/// First Main Theorem residual for φ*(s) on the disk of radius r with base
/// point 0 and the FS metric on O(1).
pub fn fmt_residual(s: &SectionPoly, arc: &AnalyticArc, r: f64) -> Result<FmtReport> {
    let d = s.degree();
    let numerator = |z: Complex64| {
        let coords = arc
            .eval(z)
            .expect("fmt contour stays inside the arc domain");
        s.eval_complex(&coords)
    };
    // Vanishing order at the base point, read off the exact pullback series.
    let series = s.pullback_series(arc, 64);
    let center_order = match series.valuation() {
        Some(v) => v,
        None => {
            return Err(Error::Precondition(
                "pullback of the section is identically zero (to series order 64)".into(),
            ))
        }
    };

    let characteristic_d = d as f64 * characteristic(arc, r, 256)?;
    let boundary = circle_mean(
        |z| {
            let coords = arc.eval(z).expect("boundary inside domain");
            s.norm_at(&coords, Metric::Fs).ln()
        },
        r,
    );
    let zeros = zeros_in_disk(&numerator, r)?;
    let interior: f64 = zeros
        .iter()
        .filter(|(z, _)| z.norm() > 1e-7)
        .map(|(z, m)| *m as f64 * (r / z.norm()).ln())
        .sum();

    // Jet-term constant for the flat tangent metric |dz|, calibrated from
    // s = X1 on the line arc and frozen: C = log r.
    let jet_constant = r.ln();
    let v0 = fs_potential(arc, Complex64::new(0.0, 0.0));
    let point_term = if center_order == 0 {
        numerator(Complex64::new(0.0, 0.0)).norm().ln() - d as f64 * v0
    } else {
        let leading = crate::series::rational_to_f64(series.coeff(center_order));
        leading.abs().ln() - d as f64 * v0 + center_order as f64 * jet_constant
    };

    let residual = (characteristic_d + boundary - interior - point_term).abs();
    Ok(FmtReport {
        characteristic: characteristic_d,
        boundary_term: boundary,
        interior_sum: interior,
        point_term,
        residual,
        center_order,
        jet_constant,
    })
}

/// Borel–Carathéodory bound: sup_{Δ_r} |f| ≤ [A_R(f) − u(0)]·2r/(R−r) + |f(0)|.
pub fn borel_caratheodory_check<F>(f: &F, r: f64, ambient: f64) -> CheckReport
where
    F: Fn(Complex64) -> Complex64,
{
    assert!(0.0 < r && r < ambient);
    let sup_abs_r = circle_sup(|z| f(z).norm(), r);
    let a_r = circle_sup(|z| f(z).re, ambient);
    let f0 = f(Complex64::new(0.0, 0.0));
    let rhs = (a_r - f0.re) * 2.0 * r / (ambient - r) + f0.norm();
    let margin = rhs - sup_abs_r;
    CheckReport {
        pass: margin >= -1e-9,
        margin,
    }
}

/// Lower bound for log |f| on Δ_r for f nonvanishing on the closed R-disk.
pub fn nonvanishing_lower_check<F>(f: &F, r: f64, ambient: f64) -> Result<CheckReport>
where
    F: Fn(Complex64) -> Complex64,
{
    assert!(0.0 < r && r < ambient);
    let inside = count_zeros(f, ambient)?;
    if inside.count > 0 {
        return Err(Error::Precondition(format!(
            "f has {} zero(s) in the ambient disk; nonvanishing required",
            inside.count
        )));
    }
    let f0 = f(Complex64::new(0.0, 0.0)).norm().ln();
    let sup_ln = circle_sup(|z| f(z).norm().ln(), ambient);
    let rhs = -(2.0 * r / (ambient - r)) * sup_ln + (ambient + r) / (ambient - r) * f0;
    // log|f| is harmonic away from zeros, so its min over the closed r-disk
    // sits on the boundary circle.
    let min_ln = -circle_sup(|z| -f(z).norm().ln(), r);
    let margin = min_ln - rhs;
    Ok(CheckReport {
        pass: margin >= -1e-9,
        margin,
    })
}

/// Dense circle sup (maximum principle pushes sups of |f|, Re f and
/// log|f| to the boundary).
fn circle_sup<G>(g: G, r: f64) -> f64
where
    G: Fn(Complex64) -> f64,
{
    let n = 1 << 12;
    let mut best = f64::NEG_INFINITY;
    let mut best_theta = 0.0;
    for k in 0..n {
        let theta = std::f64::consts::TAU * k as f64 / n as f64;
        let v = g(Complex64::from_polar(r, theta));
        if v > best {
            best = v;
            best_theta = theta;
        }
    }
    // Local golden-section refinement around the best sample.
    let mut lo = best_theta - std::f64::consts::TAU / n as f64;
    let mut hi = best_theta + std::f64::consts::TAU / n as f64;
    for _ in 0..60 {
        let m1 = lo + (hi - lo) * 0.381966;
        let m2 = hi - (hi - lo) * 0.381966;
        if g(Complex64::from_polar(r, m1)) < g(Complex64::from_polar(r, m2)) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    best.max(g(Complex64::from_polar(r, 0.5 * (lo + hi))))
}

/// Minimum of the ambient Green function over U × U (U the closed inner
/// disk), by grid search refined locally; this is the constant `a` of the
/// degree bound.
pub fn green_min_over_inner(domain: DiskDomain) -> f64 {
    let r = domain.r;
    let big = domain.ambient;
    let n = 24;
    let mut best = f64::INFINITY;
    let mut arg = (0.0, 0.0, 0.0);
    for i in 0..=n {
        let r1 = r * i as f64 / n as f64;
        for j in 0..=n {
            let r2 = r * j as f64 / n as f64;
            for k in 0..=(2 * n) {
                let dt = std::f64::consts::PI * k as f64 / n as f64;
                let z = Complex64::new(r1, 0.0);
                let w = Complex64::from_polar(r2, dt);
                if (z - w).norm() < 1e-12 {
                    continue;
                }
                if let Ok(g) = green_disk(z, w, big) {
                    if g < best {
                        best = g;
                        arg = (r1, r2, dt);
                    }
                }
            }
        }
    }
    // Refine by shrinking coordinate descent around the grid argmin.
    let (mut r1, mut r2, mut dt) = arg;
    let eval = |r1: f64, r2: f64, dt: f64| -> f64 {
        let z = Complex64::new(r1.clamp(0.0, r), 0.0);
        let w = Complex64::from_polar(r2.clamp(0.0, r), dt);
        if (z - w).norm() < 1e-12 {
            return f64::INFINITY;
        }
        green_disk(z, w, big).unwrap_or(f64::INFINITY)
    };
    let mut step = r / n as f64;
    while step > 1e-10 {
        let mut improved = false;
        for (a, b, c) in [
            (step, 0.0, 0.0),
            (-step, 0.0, 0.0),
            (0.0, step, 0.0),
            (0.0, -step, 0.0),
            (0.0, 0.0, step),
            (0.0, 0.0, -step),
        ] {
            let v = eval(r1 + a, r2 + b, dt + c);
            if v < best {
                best = v;
                r1 += a;
                r2 += b;
                dt += c;
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    best
}

/// Degree-of-divisor bound on the inner disk:
/// deg_U(s) ≤ (B₁·d + log‖s‖_sup − log‖s‖_W) / a.
pub fn degree_bound_check(
    s: &SectionPoly,
    arc: &AnalyticArc,
    domain: DiskDomain,
    witness: &[Complex64],
) -> Result<DegreeBoundReport> {
    assert!(!witness.is_empty(), "W must be a nonempty sample set");
    let numerator = |z: Complex64| {
        let coords = arc.eval(z).expect("contour inside the arc domain");
        s.eval_complex(&coords)
    };
    let deg = count_zeros(&numerator, domain.r)?.count;
    let a = green_min_over_inner(domain);

    // Measured surrogate for the uniform characteristic bound: max of the
    // based characteristic over 32 sampled base points of the inner disk.
    let mut b1 = 0.0f64;
    for w0 in polar_grid(domain.r * 0.999, 5).into_iter().take(32) {
        b1 = b1.max(characteristic_based(arc, w0, domain.ambient)?);
    }

    let log_sup = s.sup_norm(Metric::Fs).ln();
    let mut log_w = f64::NEG_INFINITY;
    for &w in witness {
        log_w = log_w.max(s.pullback_norm(arc, w, Metric::Fs)?.ln());
    }
    if !log_w.is_finite() {
        return Err(Error::Precondition(
            "section vanishes on every sample of W".into(),
        ));
    }
    let rhs = (b1 * s.degree() as f64 + log_sup - log_w) / a;
    Ok(DegreeBoundReport {
        degree_in_disk: deg,
        rhs,
        green_min: a,
        characteristic_bound: b1,
        log_sup,
        log_w,
        pass: (deg as f64) <= rhs + 1e-9,
    })
}

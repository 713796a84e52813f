//! Auxiliary polynomial construction: exact integer kernels of point
//! evaluation matrices, lattice-reduced short sections, and bounded-norm
//! section counting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

use crate::error::Error;
use crate::rational::{ln_bigint, BigRational, ProjectivePointQ};
use crate::section::{monomials_of_degree, Metric, SectionPoly};
use crate::Result;

/// The restriction map: one row per point, one column per degree-d
/// monomial (graded order fixed by `monomials_of_degree`), entries exact.
#[derive(Clone, Debug)]
pub struct EvaluationMatrix {
    monomials: Vec<Vec<u32>>,
    rows: Vec<Vec<BigInt>>,
}

impl EvaluationMatrix {
    pub fn new(points: &[ProjectivePointQ], n: usize, d: u32) -> Self {
        let monomials = monomials_of_degree(n + 1, d);
        let rows = points
            .iter()
            .map(|p| {
                assert_eq!(p.dimension(), n, "point/ambient dimension mismatch");
                monomials
                    .iter()
                    .map(|e| {
                        let mut acc = BigInt::one();
                        for (x, &k) in p.coords().iter().zip(e) {
                            acc *= x.pow(k);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        EvaluationMatrix { monomials, rows }
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// h⁰ = C(n+d, n), the column count.
    pub fn h0(&self) -> usize {
        self.monomials.len()
    }

    /// Primitive integer basis of the right kernel, one vector per free
    /// column of the reduced row-echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let cols = self.monomials.len();
        let mut m: Vec<Vec<BigRational>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        // Reduced row echelon over ℚ.
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
        let mut r = 0usize;
        for c in 0..cols {
            if r == m.len() {
                break;
            }
            let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, pr);
            let inv = m[r][c].clone();
            for j in c..cols {
                m[r][j] = &m[r][j] / &inv;
            }
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in c..cols {
                        let sub = &m[r][j] * &f;
                        m[i][j] -= sub;
                    }
                }
            }
            pivot_of_col[c] = Some(r);
            r += 1;
        }
        let mut basis = Vec::new();
        for free in 0..cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for c in 0..cols {
                if let Some(pr) = pivot_of_col[c] {
                    v[c] = -m[pr][free].clone();
                }
            }
            basis.push(primitive_integer(&v));
        }
        basis
    }
}

/// A degree-d section with an exact-vanishing certificate.
#[derive(Clone, Debug)]
pub struct AuxSectionCert {
    pub section: SectionPoly,
    pub log_max_coeff: f64,
    pub point_count: usize,
    pub h0: usize,
    pub max_point_height: f64,
}

/// A nonzero integer section of degree d on Pⁿ vanishing exactly at every
/// point; the coefficient vector is the shortest (sup-norm, then
/// lexicographic with nonnegative leading coefficient) among the
/// lattice-reduced kernel basis and the unreduced kernel basis.
pub fn vanish_section(points: &[ProjectivePointQ], n: usize, d: u32) -> Result<AuxSectionCert> {
    let matrix = EvaluationMatrix::new(points, n, d);
    let raw = matrix.kernel_basis();
    if raw.is_empty() {
        return Err(Error::TrivialKernel);
    }
    let mut reduced = raw.clone();
    lll_reduce(&mut reduced);
    let mut candidates: Vec<Vec<BigInt>> = reduced;
    candidates.extend(raw);
    for v in &mut candidates {
        normalize_sign(v);
    }
    let best = candidates
        .into_iter()
        .min_by(|a, b| sup_abs(a).cmp(&sup_abs(b)).then_with(|| a.cmp(b)))
        .expect("nonempty candidate set");

    let terms: BTreeMap<Vec<u32>, BigInt> = matrix
        .monomials()
        .iter()
        .zip(&best)
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (e.clone(), c.clone()))
        .collect();
    let section = SectionPoly::new(n + 1, d, terms);
    for p in points {
        assert!(
            section.eval_bigint(p.coords()).is_zero(),
            "kernel vector must vanish exactly at {p}"
        );
    }
    Ok(AuxSectionCert {
        log_max_coeff: ln_bigint(&sup_abs(&best)),
        section,
        point_count: points.len(),
        h0: matrix.h0(),
        max_point_height: points
            .iter()
            .map(|p| p.height().value())
            .fold(0.0, f64::max),
    })
}

/// The A lowest-height points with (1−2ε)h⁰ ≤ A ≤ (1−ε)h⁰ (clamped to the
/// available points), for the subset-selection regime.
pub fn distance_subset(
    points: &[ProjectivePointQ],
    n: usize,
    d: u32,
    epsilon: f64,
) -> Result<Vec<ProjectivePointQ>> {
    if !(0.0 < epsilon && epsilon < 0.5) {
        return Err(Error::Precondition(format!(
            "epsilon must lie in (0, 1/2), got {epsilon}"
        )));
    }
    let h0 = monomials_of_degree(n + 1, d).len();
    let a = ((1.0 - epsilon) * h0 as f64).floor() as usize;
    let a = a.clamp(1, points.len());
    let mut sorted = points.to_vec();
    sorted.sort_by(|p, q| p.max_abs_coord().cmp(&q.max_abs_coord()).then_with(|| p.cmp(q)));
    sorted.truncate(a);
    Ok(sorted)
}

/// Measured coefficient size against the d·T shape of the section bound.
#[derive(Clone, Copy, Debug)]
pub struct SiegelRatioReport {
    pub log_max_coeff: f64,
    pub degree_times_t: f64,
    pub ratio: f64,
}

pub fn siegel_bound_report(cert: &AuxSectionCert, t_max: f64) -> SiegelRatioReport {
    let denom = cert.section.degree() as f64 * t_max;
    let ratio = if denom > 0.0 {
        cert.log_max_coeff / denom
    } else if cert.log_max_coeff == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    SiegelRatioReport {
        log_max_coeff: cert.log_max_coeff,
        degree_times_t: denom,
        ratio,
    }
}

/// Exact count of nonzero integer degree-d forms on P¹ with sup-metric
/// norm ≤ T, by exhaustive enumeration over |c_i| ≤ ceil(T·2^d).
pub fn count_small_sections(d: u32, t: f64) -> Result<u64> {
    if d > 3 || !(0.0..=10.0).contains(&t) {
        return Err(Error::InfeasibleRange(format!(
            "count_small_sections is brute force; needs d <= 3 and 0 <= T <= 10, got d = {d}, T = {t}"
        )));
    }
    let bound = (t * f64::from(1u32 << d)).ceil() as i64;
    let m = d as usize + 1;
    let mut coeffs = vec![-bound; m];
    let mut count = 0u64;
    loop {
        if coeffs.iter().any(|&c| c != 0) {
            let ints: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
            let s = SectionPoly::from_p1_coeffs(d, &ints);
            if s.sup_norm(Metric::Max) <= t + 1e-9 {
                count += 1;
            }
        }
        let mut i = 0;
        loop {
            if i == m {
                return Ok(count);
            }
            if coeffs[i] < bound {
                coeffs[i] += 1;
                break;
            }
            coeffs[i] = -bound;
            i += 1;
        }
    }
}

/// Clears denominators and divides by the content; sign-normalizes.
fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g > BigInt::one() {
        for x in &mut ints {
            *x /= &g;
        }
    }
    normalize_sign(&mut ints);
    ints
}

fn normalize_sign(v: &mut [BigInt]) {
    if v.iter().find(|x| !x.is_zero()).map(|x| x.is_negative()) == Some(true) {
        for x in v.iter_mut() {
            *x = -&*x;
        }
    }
}

fn sup_abs(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
}

/// Textbook Lenstra–Lenstra–Lovász reduction with δ = 0.99 in exact
/// rational arithmetic.  Dimensions here are tiny, so the Gram–Schmidt
/// data is recomputed per step.
fn lll_reduce(basis: &mut Vec<Vec<BigInt>>) {
    let n = basis.len();
    if n <= 1 {
        return;
    }
    let delta = BigRational::new(BigInt::from(99), BigInt::from(100));
    // mu[i][j] for j < i and squared GSO norms.
    let gso = |basis: &Vec<Vec<BigInt>>| -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
        let dim = basis[0].len();
        let mut mu = vec![vec![BigRational::zero(); n]; n];
        let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        let mut norms = Vec::with_capacity(n);
        for i in 0..n {
            let mut v: Vec<BigRational> = basis[i]
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            for j in 0..i {
                let num: BigRational = (0..dim)
                    .map(|k| BigRational::from_integer(basis[i][k].clone()) * &star[j][k])
                    .sum();
                let m = &num / &norms[j];
                for k in 0..dim {
                    let sub = &star[j][k] * &m;
                    v[k] -= sub;
                }
                mu[i][j] = m;
            }
            let norm: BigRational = v.iter().map(|x| x * x).sum();
            star.push(v);
            norms.push(norm);
        }
        (mu, norms)
    };
    let mut k = 1usize;
    while k < n {
        let (mu, _) = gso(basis);
        // Size-reduce b_k against b_{k-1}, …, b_0.
        let mut mu_k = mu[k].clone();
        for j in (0..k).rev() {
            let r = mu_k[j].round().to_integer();
            if !r.is_zero() {
                for t in 0..basis[k].len() {
                    let sub = &basis[j][t] * &r;
                    basis[k][t] -= sub;
                }
                let rq = BigRational::from_integer(r);
                for t in 0..j {
                    let sub = &mu[j][t] * &rq;
                    mu_k[t] -= sub;
                }
                mu_k[j] -= rq;
            }
        }
        let (mu, norms) = gso(basis);
        let lovasz = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if norms[k] >= lovasz {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            k = k.max(2) - 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(coords: &[i64]) -> ProjectivePointQ {
        let ints: Vec<BigInt> = coords.iter().map(|&c| BigInt::from(c)).collect();
        ProjectivePointQ::normalize_ints(&ints).unwrap()
    }

    #[test]
    fn kernel_fixture_xy() {
        let cert = vanish_section(&[point(&[1, 0]), point(&[0, 1])], 1, 2).unwrap();
        // Monomial order X², XY, Y² — the kernel is spanned by XY.
        assert_eq!(cert.section.to_dense(), vec![BigInt::from(0), BigInt::from(1), BigInt::from(0)]);
        assert_eq!(cert.log_max_coeff, 0.0);
        assert_eq!(cert.h0, 3);
    }

    #[test]
    fn kernel_fixture_quadratic() {
        let cert = vanish_section(&[point(&[1, 1]), point(&[1, 2])], 1, 2).unwrap();
        assert_eq!(
            cert.section.to_dense(),
            vec![BigInt::from(2), BigInt::from(-3), BigInt::from(1)]
        );
    }

    #[test]
    fn plane_point_gives_unit_difference() {
        let cert = vanish_section(&[point(&[1, 1, 1])], 2, 1).unwrap();
        let dense = cert.section.to_dense();
        assert_eq!(cert.log_max_coeff, 0.0);
        let nonzero: Vec<&BigInt> = dense.iter().filter(|c| !c.is_zero()).collect();
        assert_eq!(nonzero.len(), 2);
        assert!(nonzero.iter().all(|c| c.abs() == BigInt::one()));
        assert!(cert
            .section
            .eval_bigint(point(&[1, 1, 1]).coords())
            .is_zero());
    }

    #[test]
    fn empty_points_degree_zero() {
        let cert = vanish_section(&[], 1, 0).unwrap();
        assert_eq!(cert.section.to_dense(), vec![BigInt::one()]);
        assert_eq!(cert.point_count, 0);
    }

    #[test]
    fn trivial_kernel_rejected() {
        // Three coordinate points saturate the degree-1 system on P².
        let pts = [point(&[1, 0, 0]), point(&[0, 1, 0]), point(&[0, 0, 1])];
        assert!(matches!(
            vanish_section(&pts, 2, 1),
            Err(Error::TrivialKernel)
        ));
    }

    #[test]
    fn exact_vanishing_random_corpus() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..25 {
            // Keep |points| < h⁰ = d + 1 so a nonzero section exists.
            let count = rng.gen_range(1..4usize);
            let pts: Vec<ProjectivePointQ> = (0..count)
                .map(|_| {
                    loop {
                        let a = rng.gen_range(-9i64..10);
                        let b = rng.gen_range(-9i64..10);
                        if a != 0 || b != 0 {
                            return point(&[a, b]);
                        }
                    }
                })
                .collect();
            let d = rng.gen_range(3..6u32);
            let cert = vanish_section(&pts, 1, d).unwrap();
            for p in &pts {
                assert!(cert.section.eval_bigint(p.coords()).is_zero());
            }
            assert!(cert.point_count < cert.h0);
        }
    }

    #[test]
    fn reduced_vector_no_longer_than_kernel_basis() {
        let pts = [point(&[3, 7]), point(&[5, -2]), point(&[11, 4])];
        let cert = vanish_section(&pts, 1, 4).unwrap();
        let emitted = sup_abs(&cert.section.to_dense());
        for v in EvaluationMatrix::new(&pts, 1, 4).kernel_basis() {
            assert!(emitted <= sup_abs(&v));
        }
    }

    #[test]
    fn deterministic() {
        let pts = [point(&[2, 5]), point(&[-3, 4])];
        let a = vanish_section(&pts, 1, 3).unwrap();
        let b = vanish_section(&pts, 1, 3).unwrap();
        assert_eq!(a.section.to_dense(), b.section.to_dense());
    }

    #[test]
    fn subset_selection_takes_lowest_heights() {
        let pts = [point(&[9, 1]), point(&[1, 1]), point(&[1, 2]), point(&[5, 3])];
        // h⁰ = 4 for d = 3 on P¹, ε = 1/4 → A = 3.
        let sub = distance_subset(&pts, 1, 3, 0.25).unwrap();
        assert_eq!(sub.len(), 3);
        assert!(sub.contains(&point(&[1, 1])));
        assert!(sub.contains(&point(&[1, 2])));
        assert!(sub.contains(&point(&[5, 3])));
    }

    #[test]
    fn ratio_zero_for_unit_points() {
        let cert = vanish_section(&[point(&[1, 0]), point(&[0, 1])], 1, 2).unwrap();
        let rep = siegel_bound_report(&cert, cert.max_point_height);
        assert_eq!(rep.ratio, 0.0);
    }

    #[test]
    fn ratio_finite_single_point() {
        let cert = vanish_section(&[point(&[1, 2])], 1, 1).unwrap();
        let rep = siegel_bound_report(&cert, cert.max_point_height);
        assert!(rep.ratio.is_finite());
    }

    #[test]
    fn count_degree_zero_closed_form() {
        for t in [0.0, 1.0, 2.5, 7.0] {
            assert_eq!(count_small_sections(0, t).unwrap(), 2 * t.floor() as u64);
        }
    }

    #[test]
    fn count_degree_one_matches_ell1_oracle() {
        // ‖aX + bY‖_sup under the max metric is |a| + |b| (the extremum is
        // on the unit circle of either chart).
        for t in [1.0f64, 2.0, 3.0] {
            let bound = (t * 2.0).ceil() as i64;
            let mut oracle = 0u64;
            for a in -bound..=bound {
                for b in -bound..=bound {
                    if (a, b) != (0, 0) && (a.abs() + b.abs()) as f64 <= t + 1e-9 {
                        oracle += 1;
                    }
                }
            }
            assert_eq!(count_small_sections(1, t).unwrap(), oracle, "T = {t}");
        }
    }

    #[test]
    fn count_monotone_in_t() {
        let mut prev = 0;
        for t in [0.5, 1.0, 1.5, 2.0] {
            let c = count_small_sections(2, t).unwrap();
            assert!(c >= prev);
            prev = c;
        }
    }

    #[test]
    fn infeasible_ranges_rejected() {
        assert!(count_small_sections(4, 1.0).is_err());
        assert!(count_small_sections(2, 11.0).is_err());
    }
}

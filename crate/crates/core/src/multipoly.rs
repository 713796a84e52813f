//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! These are the affine-chart polynomials used for vector fields and leaf
//! order computations; homogeneous integer sections live in `section`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::BigRational;
use crate::series::TruncatedSeries;

/// Σ c_α x^α with c_α ∈ ℚ, keyed by exponent vectors of fixed length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MultiPoly {
    pub fn new(nvars: usize, terms: BTreeMap<Vec<u32>, BigRational>) -> Self {
        let mut clean = BTreeMap::new();
        for (expo, c) in terms {
            assert_eq!(expo.len(), nvars, "exponent arity mismatch");
            if !c.is_zero() {
                clean.insert(expo, c);
            }
        }
        MultiPoly {
            nvars,
            terms: clean,
        }
    }

    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::new(nvars, BTreeMap::from([(vec![0; nvars], c)]))
    }

    /// The coordinate polynomial x_i.
    pub fn variable(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0u32; nvars];
        e[i] = 1;
        Self::new(nvars, BTreeMap::from([(e, BigRational::one())]))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; zero polynomial reports 0.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(BigRational::zero);
            *entry += c;
        }
        Self::new(self.nvars, terms)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut terms: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let entry = terms.entry(e).or_insert_with(BigRational::zero);
                *entry += ca * cb;
            }
        }
        Self::new(self.nvars, terms)
    }

    pub fn scale(&self, lambda: &BigRational) -> Self {
        Self::new(
            self.nvars,
            self.terms
                .iter()
                .map(|(e, c)| (e.clone(), c * lambda))
                .collect(),
        )
    }

    /// ∂/∂x_i.
    pub fn partial(&self, i: usize) -> Self {
        assert!(i < self.nvars);
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut de = e.clone();
            de[i] -= 1;
            terms.insert(de, c * BigRational::from_integer(e[i].into()));
        }
        Self::new(self.nvars, terms)
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }

    /// Exact composition with one truncated series per variable.
    pub fn compose_series(&self, args: &[TruncatedSeries], order: usize) -> TruncatedSeries {
        assert_eq!(args.len(), self.nvars);
        let mut acc = TruncatedSeries::zero(order);
        for (e, c) in &self.terms {
            let mut term = TruncatedSeries::constant(c.clone(), order);
            for (s, &k) in args.iter().zip(e) {
                if k > 0 {
                    term = term.mul(&s.truncate(order).pow(k));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }
}

//! Exact heights, auxiliary polynomials, disk potential theory and
//! rational-point censuses on analytic arcs in projective space.
//!
//! The library is organised in layers:
//!
//! * [`rational`] — arbitrary-precision rationals, canonical projective
//!   points and naive Weil heights over ℚ;
//! * [`series`] / [`arcs`] / [`section`] — truncated power series, analytic
//!   arcs Δ → Pⁿ(ℂ) and homogeneous integer sections with their norms;
//! * [`disk`] — Green functions, Poisson reconstruction, argument-principle
//!   zero counting, the Nevanlinna characteristic and the degree bound;
//! * [`bloch`] — Bloch–Cartan exceptional-set and small-norm area estimates;
//! * [`siegel`] — exact integer kernels, lattice reduction and auxiliary
//!   sections vanishing on prescribed point sets;
//! * [`dioph`] — exact Liouville checks and type-S scanning;
//! * [`foliage`] — formal leaves of polynomial vector fields, vanishing
//!   orders along leaves and jet-denominator measurements;
//! * [`census`] / [`config`] / [`report`] — the A_U(T) census pipeline,
//!   run configuration and deterministic report emission.

pub mod arcs;
pub mod bloch;
pub mod census;
pub mod config;
pub mod dioph;
pub mod disk;
pub mod error;
pub mod foliage;
pub mod multipoly;
pub mod rational;
pub mod report;
pub mod section;
pub mod series;
pub mod siegel;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

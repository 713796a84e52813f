use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("not a projective point: all coordinates are zero")]
    AllZeroCoordinates,

    #[error("evaluation point outside the arc domain: |z| = {abs} >= r_max = {r_max}")]
    OutsideDomain { abs: f64, r_max: f64 },

    #[error("diagonal singularity: Green function is not defined at z = w")]
    DiagonalSingularity,

    #[error("contour too close to a zero; retried with perturbed radius and failed (residual {residual})")]
    ContourNearZero { residual: f64 },

    #[error("quadrature parameter rejected: {0}")]
    BadQuadrature(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no nonzero section exists at this degree")]
    TrivialKernel,

    #[error("section vanishes at the point; Liouville not applicable")]
    SectionVanishes,

    #[error("singular leaf not supported: all vector field components vanish at the base point")]
    SingularLeaf,

    #[error("vanishing order exceeds truncation N = {truncation}")]
    OrderExceedsTruncation { truncation: usize },

    #[error("infeasible scan range: {0}")]
    InfeasibleRange(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

use num_complex::Complex64;
use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("argument of zero is undefined")]
    ZeroArgument,
    #[error("point lies on the branch cut at angle {beta}")]
    OnBranchCut { beta: f64 },
    #[error("Bernoulli index {0} exceeds the supported limit 60")]
    LimitExceeded(usize),
    #[error("zeta function has a pole at s = 1")]
    PoleAtOne,
    #[error("Hurwitz parameter must have positive real part, got {0}")]
    DomainError(Complex64),
    #[error("quadrature failed to reach tolerance {tol:e} (best error {best:e})")]
    QuadratureFailure { tol: f64, best: f64 },
    #[error("evaluation point {s} is within {dist:e} of the kernel pole at {pole}")]
    NearPole {
        s: Complex64,
        pole: Complex64,
        dist: f64,
    },
    #[error("zeta derivative diverges at s = 0 for exponential eigenvalue growth")]
    DivergentAtZero,
    #[error("spectral zeta function is not defined for this spectrum")]
    UndefinedZeta,
    #[error("branch cut endpoint lies on an eigenvalue ray at angle {0}")]
    CutOnRay(f64),
    #[error(
        "sweep crosses the accumulation directions of a shifted-line component; \
         use compare_cuts instead"
    )]
    UnsupportedSweep,
    #[error("component index {index} out of range ({len} components)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("Re s = {0} is outside the convergence region (requires Re s > {1})")]
    OutsideConvergenceRegion(f64, f64),
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("invalid configuration: {0}")]
    ValidationError(String),
}

pub type Result<T> = std::result::Result<T, Error>;

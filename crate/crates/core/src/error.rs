use alloc::boxed::Box;

use crate::jacobi::UniformJacobiSolution;
use crate::oracle::lp::LpError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// The iteration did not reach the requested tolerance. `best` carries
    /// the iterate with the smallest residual, when one exists.
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NonConvergence {
        iterations: usize,
        residual: f64,
        best: Option<Box<UniformJacobiSolution>>,
    },

    /// Prevertices left `(0, 1)` or lost their order during a Newton step.
    #[error("prevertex ordering violated at iteration {iteration}")]
    OrderingViolation { iteration: usize },

    #[error("logarithmic singularity at z = {re} + {im}i")]
    Singular { re: f64, im: f64 },

    #[error("(alpha, beta) = ({alpha}, {beta}) is outside alpha, beta >= 0, alpha + beta <= 1")]
    OutOfDomain { alpha: f64, beta: f64 },

    #[error("the limit map degenerates for (alpha, beta) = ({alpha}, {beta})")]
    DegenerateMap { alpha: f64, beta: f64 },

    #[error("degree {degree} exceeds the oracle limit {max}")]
    DegreeGuard { degree: usize, max: usize },

    #[error("grid {grid} is too small (need at least {min})")]
    GridTooSmall { grid: usize, min: usize },

    #[error("linear program failed: {0}")]
    Lp(#[from] LpError),
}

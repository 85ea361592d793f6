//! Quadrature, dense Nyström solves, bracketed root finding, damped
//! fixed-point iteration and Richardson-extrapolated derivatives.
//!
//! Everything here is a pure function of its inputs.

mod derivative;
mod fixed_point;
mod nystrom;
mod quadrature;
mod roots;

pub use derivative::{richardson_derivative, Derivative, Interval};
pub use fixed_point::{damped_fixed_point, FixedPointOptions, FixedPointOutcome};
pub use nystrom::{nystrom_solve, LuFactor, NystromSystem};
pub use quadrature::{
    gauss_legendre, halfline_grid, power_tail, Domain, QuadratureGrid, BREAK_FACTOR,
};
pub use roots::{brent_root, try_brent_root};

/// Linear-system residual tolerance, relative to the max-norm of the right side.
pub const LINEAR_TOL: f64 = 1e-12;
/// Default max-norm update tolerance for fixed-point iterations.
pub const FIXED_POINT_TOL: f64 = 1e-10;

/// Outcome bookkeeping shared by the iterative and direct solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverReport {
    pub iterations: usize,
    /// Max-norm of the defect (linear solves) or of the last update
    /// (fixed-point iterations).
    pub residual: f64,
    pub converged: bool,
    pub nodes_used: usize,
}

use alloc::vec::Vec;

use super::{SolverReport, FIXED_POINT_TOL};
use crate::error::{bail_arg, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointOptions {
    /// Mixing weight `α ∈ (0, 1]` of the new iterate.
    pub damping: f64,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for FixedPointOptions {
    fn default() -> Self {
        Self {
            damping: 1.0,
            tol: FIXED_POINT_TOL,
            max_iter: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointOutcome {
    pub x: Vec<f64>,
    pub report: SolverReport,
}

/// Iterates `x ← (1 - α) x + α map(x)` until the max-norm update drops below
/// `tol`. Running out of iterations is not an error: the outcome carries
/// `converged = false` and the caller decides whether to retry with a
/// smaller `α`. Errors raised by `map` abort the iteration.
pub fn damped_fixed_point<M>(mut map: M, x0: &[f64], opts: FixedPointOptions) -> Result<FixedPointOutcome>
where
    M: FnMut(&[f64]) -> Result<Vec<f64>>,
{
    let alpha = opts.damping;
    if !(alpha > 0.0 && alpha <= 1.0) {
        bail_arg!("damping must lie in (0, 1], got {alpha}");
    }
    if opts.max_iter < 1 {
        bail_arg!("max_iter must be at least 1");
    }
    let mut x = x0.to_vec();
    let mut update = f64::INFINITY;
    for iter in 1..=opts.max_iter {
        let mapped = map(&x)?;
        if mapped.len() != x.len() {
            bail_arg!("map changed the dimension from {} to {}", x.len(), mapped.len());
        }
        update = 0.0;
        for (xi, mi) in x.iter_mut().zip(&mapped) {
            let next = (1.0 - alpha) * *xi + alpha * mi;
            update = f64::max(update, (next - *xi).abs());
            *xi = next;
        }
        if !update.is_finite() {
            return Err(Error::NonFinite("fixed-point iterate"));
        }
        if update < opts.tol {
            return Ok(FixedPointOutcome {
                x,
                report: SolverReport {
                    iterations: iter,
                    residual: update,
                    converged: true,
                    nodes_used: 0,
                },
            });
        }
    }
    Ok(FixedPointOutcome {
        x,
        report: SolverReport {
            iterations: opts.max_iter,
            residual: update,
            converged: false,
            nodes_used: 0,
        },
    })
}

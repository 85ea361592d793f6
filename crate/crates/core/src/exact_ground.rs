//! Exact Lieb-Liniger ground state.
//!
//! In the scaled variables `k = K x`, `c = K λ`, `f(K x) = g(x)` the
//! quasi-momentum density solves
//!
//! ```text
//! 2π g(y) = 1 + 2λ ∫_{-1}^{1} g(x) / (λ² + (x - y)²) dx
//! ```
//!
//! and the coupling and energy follow as `γ = λ / ∫g` and
//! `e(γ) = (γ/λ)³ ∫ g x² dx`, with `E₀/N = ρ² e(γ)`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{bail_arg, Error, Result};
use crate::math::{ceil, sqrt};
use crate::numerics::{
    gauss_legendre, nystrom_solve, try_brent_root, Interval, NystromSystem, QuadratureGrid,
    SolverReport,
};
use crate::thermo::{self, check_grid, MethodTag, ThermoCurve, ThermoValues};

/// Smallest coupling the exact solver accepts.
pub const GAMMA_MIN: f64 = 1e-4;
/// Largest coupling the exact solver accepts.
pub const GAMMA_MAX: f64 = 1e5;
/// Default Gauss-Legendre node count on `[-1, 1]`.
pub const DEFAULT_NODES: usize = 128;
/// Below this `λ` the Lorentzian kernel is narrower than the default grid
/// resolves, and the node count is scaled up proportionally.
pub const RESOLVED_LAMBDA: f64 = 0.2;

const MAX_NODES: usize = 4096;
const BRACKET_EXPANSIONS: usize = 80;

/// Supported coupling range as a derivative domain.
pub const GAMMA_DOMAIN: Interval = Interval {
    lo: GAMMA_MIN,
    hi: GAMMA_MAX,
};

/// Scaled kernel `(λ/π) / (λ² + (x - y)²)`, so that `g = 1/(2π) + ∫ kernel g`.
pub fn lieb_kernel(lambda: f64) -> impl Fn(f64, f64) -> f64 + Copy {
    move |x, y| {
        let d = x - y;
        lambda / (PI * (lambda * lambda + d * d))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LiebGroundSolution {
    pub lambda: f64,
    /// `K/ρ = γ/λ`.
    pub k_cutoff: f64,
    /// Gauss-Legendre nodes on `[-1, 1]` where `g` is sampled.
    pub x_nodes: Vec<f64>,
    pub g_values: Vec<f64>,
    pub gamma: f64,
    pub e_dimensionless: f64,
    pub report: SolverReport,
    /// `∫ g dx`, kept for the `γ ∫ g = λ` constraint.
    pub g_integral: f64,
}

impl LiebGroundSolution {
    /// `|γ ∫g dx - λ|`.
    pub fn constraint_residual(&self) -> f64 {
        (self.gamma * self.g_integral - self.lambda).abs()
    }
}

/// Solves the scaled ground-state equation at fixed `λ` on `n_nodes`
/// Gauss-Legendre points. Even node counts exploit `g(x) = g(-x)` and solve
/// the folded half-size system.
pub fn solve_dimensionless(lambda: f64, n_nodes: usize) -> Result<LiebGroundSolution> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        bail_arg!("lambda must be positive, got {lambda}");
    }
    if n_nodes < 16 {
        bail_arg!("need at least 16 nodes, got {n_nodes}");
    }
    let grid = gauss_legendre(n_nodes, -1.0, 1.0)?;
    let kernel = lieb_kernel(lambda);
    let rhs = 0.5 / PI;

    let (g_values, report) = match grid.positive_half() {
        Some(half) => {
            let folded = NystromSystem::from_fns(half, |x, y| kernel(x, y) + kernel(x, -y), |_| rhs)?;
            let (g_half, mut report) = nystrom_solve(&folded)?;
            report.nodes_used = n_nodes;
            let mut g: Vec<f64> = g_half.iter().rev().copied().collect();
            g.extend_from_slice(&g_half);
            (g, report)
        }
        None => {
            let system = NystromSystem::from_fns(grid.clone(), kernel, |_| rhs)?;
            nystrom_solve(&system)?
        }
    };
    finish(lambda, &grid, g_values, report)
}

fn finish(
    lambda: f64,
    grid: &QuadratureGrid,
    g_values: Vec<f64>,
    report: SolverReport,
) -> Result<LiebGroundSolution> {
    let g_integral = grid.dot(&g_values);
    let second_moment: f64 = grid
        .iter()
        .zip(&g_values)
        .map(|((x, w), g)| w * g * x * x)
        .sum();
    let gamma = lambda / g_integral;
    // (γ/λ)³ = 1/(∫g)³
    let e = second_moment / (g_integral * g_integral * g_integral);
    if !(gamma.is_finite() && e.is_finite()) {
        return Err(Error::NonFinite("ground-state moments"));
    }
    Ok(LiebGroundSolution {
        lambda,
        k_cutoff: gamma / lambda,
        x_nodes: grid.nodes().to_vec(),
        g_values,
        gamma,
        e_dimensionless: e,
        report,
        g_integral,
    })
}

/// Cheap lower estimate of `λ(γ)`: `γ ≤ πλ` always (since `g ≥ 1/2π`), and
/// `λ` approaches `√γ / 2` from above at weak coupling.
pub fn lambda_estimate(gamma: f64) -> f64 {
    f64::max(gamma / PI, 0.5 * sqrt(gamma))
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(GAMMA_MIN..=GAMMA_MAX).contains(&gamma) {
        return Err(Error::OutOfRange {
            value: gamma,
            lo: GAMMA_MIN,
            hi: GAMMA_MAX,
        });
    }
    Ok(())
}

/// Exact ground-state solver with a base resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactGround {
    /// Base node count; scaled up for narrow kernels.
    pub nodes: usize,
}

impl Default for ExactGround {
    fn default() -> Self {
        Self {
            nodes: DEFAULT_NODES,
        }
    }
}

impl ExactGround {
    pub fn new(nodes: usize) -> Result<Self> {
        if nodes < 16 {
            bail_arg!("need at least 16 nodes, got {nodes}");
        }
        Ok(Self { nodes })
    }

    /// Node count used at coupling `gamma`: the base count times
    /// `⌈RESOLVED_LAMBDA / λ_est⌉`, even, capped at 4096.
    pub fn nodes_for(&self, gamma: f64) -> usize {
        let factor = ceil(RESOLVED_LAMBDA / lambda_estimate(gamma)).max(1.0) as usize;
        let n = (self.nodes * factor).min(MAX_NODES.max(self.nodes));
        n + n % 2
    }

    /// Inverts `λ ↦ γ(λ)` at the resolution chosen for `gamma`.
    pub fn gamma_to_lambda(&self, gamma: f64, tol: f64) -> Result<f64> {
        self.lambda_with_nodes(gamma, tol, self.nodes_for(gamma))
    }

    fn lambda_with_nodes(&self, gamma: f64, tol: f64, n: usize) -> Result<f64> {
        check_gamma(gamma)?;
        let defect = |lambda: f64| -> Result<f64> { Ok(solve_dimensionless(lambda, n)?.gamma - gamma) };
        // Large systems: locate the root on a coarser grid first, then
        // polish inside a narrow bracket around it.
        let coarse_n = n / 4;
        if coarse_n >= DEFAULT_NODES {
            let coarse = self.lambda_with_nodes(gamma, 1e-10 * gamma, coarse_n + coarse_n % 2)?;
            let (lo, hi) = (coarse * (1.0 - 1e-3), coarse * (1.0 + 1e-3));
            let (f_lo, f_hi) = (defect(lo)?, defect(hi)?);
            if f_lo <= 0.0 && f_hi >= 0.0 {
                return try_brent_root(defect, lo, hi, tol);
            }
        }
        // γ(λ) ≤ πλ, so λ = γ/π is never above the root.
        let mut lo = gamma / PI;
        let mut f_lo = defect(lo)?;
        if f_lo == 0.0 {
            return Ok(lo);
        }
        let guess = lambda_estimate(gamma);
        if guess > lo {
            let f_guess = defect(guess)?;
            if f_guess <= 0.0 {
                lo = guess;
                f_lo = f_guess;
            }
        }
        let mut hi = 1.5 * lo;
        let mut f_hi = defect(hi)?;
        let mut expansions = 0;
        while f_hi < 0.0 {
            if expansions == BRACKET_EXPANSIONS {
                return Err(Error::NoSignChange {
                    lo,
                    hi,
                    f_lo,
                    f_hi,
                });
            }
            lo = hi;
            f_lo = f_hi;
            hi *= 2.0;
            f_hi = defect(hi)?;
            expansions += 1;
        }
        try_brent_root(defect, lo, hi, tol)
    }

    /// Full ground-state solution at coupling `gamma`.
    pub fn solve(&self, gamma: f64) -> Result<LiebGroundSolution> {
        self.solve_with_nodes(gamma, self.nodes_for(gamma))
    }

    fn solve_with_nodes(&self, gamma: f64, n: usize) -> Result<LiebGroundSolution> {
        let lambda = self.lambda_with_nodes(gamma, default_tol(gamma), n)?;
        solve_dimensionless(lambda, n)
    }

    fn energy_with_nodes(&self, gamma: f64, n: usize) -> Result<f64> {
        Ok(self.solve_with_nodes(gamma, n)?.e_dimensionless)
    }

    /// `e(γ) = E₀ / (N ρ²)`.
    pub fn energy(&self, gamma: f64) -> Result<f64> {
        self.energy_with_nodes(gamma, self.nodes_for(gamma))
    }

    /// `μ/ρ² = 3e - γ e'`.
    pub fn chemical_potential(&self, gamma: f64) -> Result<f64> {
        check_gamma(gamma)?;
        let n = self.nodes_for(gamma);
        thermo::chemical_potential_from(|g| self.energy_with_nodes(g, n), gamma, GAMMA_DOMAIN)
    }

    /// `v_s/ρ` from the compressibility.
    pub fn sound_velocity(&self, gamma: f64) -> Result<f64> {
        Ok(self.thermo(gamma)?.vs)
    }

    pub fn thermo(&self, gamma: f64) -> Result<ThermoValues> {
        check_gamma(gamma)?;
        let n = self.nodes_for(gamma);
        thermo::thermo_from_energy(|g| self.energy_with_nodes(g, n), gamma, GAMMA_DOMAIN)
    }

    /// Sequential sweep; per-point failures are recorded in the curve.
    pub fn sweep(&self, gamma_grid: &[f64]) -> Result<ThermoCurve> {
        check_grid(gamma_grid)?;
        ThermoCurve::from_results(
            MethodTag::Exact,
            gamma_grid,
            gamma_grid.iter().map(|&g| self.thermo(g)),
        )
    }
}

fn default_tol(gamma: f64) -> f64 {
    1e-14 * gamma
}

/// `λ(γ)` at default resolution.
pub fn gamma_to_lambda(gamma: f64, tol: f64) -> Result<f64> {
    ExactGround::default().gamma_to_lambda(gamma, tol)
}

pub fn ground_energy(gamma: f64) -> Result<f64> {
    ExactGround::default().energy(gamma)
}

pub fn chemical_potential(gamma: f64) -> Result<f64> {
    ExactGround::default().chemical_potential(gamma)
}

pub fn sound_velocity(gamma: f64) -> Result<f64> {
    ExactGround::default().sound_velocity(gamma)
}

pub fn sweep_ground(gamma_grid: &[f64]) -> Result<ThermoCurve> {
    ExactGround::default().sweep(gamma_grid)
}

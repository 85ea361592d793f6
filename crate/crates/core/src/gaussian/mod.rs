//! Self-consistent Gaussian mean field.
//!
//! The trial density is the most general Gaussian in the field operators,
//! diagonalized by a Bogoliubov rotation `tanh 2σ_k` with quasiparticle
//! occupations `ν_k`. All momentum sums are taken in the thermodynamic limit,
//! `Σ_k → (L/2π) ∫ dk`, and integrals over the real line are evaluated as
//! twice the half-line integral.
//!
//! The three moments are
//!
//! ```text
//! A = (1/4π) ∫ (1 + 2ν) sinh 2σ dk
//! B = (1/4π) ∫ [(1 + 2ν) cosh 2σ - 1] dk
//! C = (1/4π) ∫ k² [(1 + 2ν) cosh 2σ - 1] dk
//! ```

mod condensed;
mod functional;
mod noncondensed;
mod variance;

pub use condensed::{gap_residual, gaussian_spectrum, solution_modes, solve_condensed, BogolyubovParams, SpectrumSample};
pub use functional::{free_energy, gaussian_energy, trial_free_energy};
pub use noncondensed::{bose_density, solve_noncondensed};
pub use variance::{number_variance, ModeSums};

use alloc::vec::Vec;

use crate::error::Result;
use crate::numerics::{Interval, SolverReport};
use crate::point::CouplingPoint;
use crate::thermo::{self, check_grid, MethodTag, ThermoCurve, ThermoValues};

pub const DEFAULT_NODES: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Condensed,
    NonCondensed,
}

/// `A`, `B`, `C` of one Gaussian state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    /// Anomalous (pairing) moment.
    pub a: f64,
    /// Non-condensed density.
    pub b: f64,
    /// Kinetic energy density.
    pub c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianConfig {
    /// Nodes of the half-line momentum grid.
    pub nodes: usize,
    /// Max-norm update tolerance of the gap-equation iteration.
    pub tol: f64,
    /// Initial mixing weight; halved on failure.
    pub damping: f64,
    pub max_iter: usize,
    /// Outer cutoff of the momentum grid (infinite by default).
    pub k_max: f64,
    /// Starting `(A, B)`; `None` uses `A₀ = ρ√γ/2π`, `B₀ = A₀/2`.
    pub initial: Option<(f64, f64)>,
}

impl Default for GaussianConfig {
    fn default() -> Self {
        Self {
            nodes: DEFAULT_NODES,
            tol: 1e-12,
            damping: 0.5,
            max_iter: 4000,
            k_max: f64::INFINITY,
            initial: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianSolution {
    pub point: CouplingPoint,
    pub phase: Phase,
    pub moments: Moments,
    /// `Γ₀²/L = ρ - B`.
    pub condensate_density: f64,
    pub mu: f64,
    /// `E/N` (internal energy per particle).
    pub energy_per_particle: f64,
    /// `F/L`.
    pub free_energy_density: f64,
    /// Gap-equation defect (condensed) or density defect (non-condensed).
    pub residual: f64,
    pub report: SolverReport,
}

impl GaussianSolution {
    pub fn a(&self) -> f64 {
        self.moments.a
    }

    pub fn b(&self) -> f64 {
        self.moments.b
    }

    pub fn c_kinetic(&self) -> f64 {
        self.moments.c
    }

    /// Spectrum at `k = 0`.
    pub fn gap(&self) -> f64 {
        match self.phase {
            Phase::Condensed => {
                let p = &self.point;
                4.0 * p.c() * crate::math::sqrt((p.rho() - self.moments.b) * self.moments.a)
            }
            Phase::NonCondensed => 4.0 * self.point.c() * self.point.rho() - self.mu,
        }
    }

    /// `E/(N ρ²)`.
    pub fn e_dimensionless(&self) -> f64 {
        let rho = self.point.rho();
        self.energy_per_particle / (rho * rho)
    }
}

/// Energy per particle over `ρ²` at `T = 0`, as a function of `γ` at fixed `ρ`.
pub fn energy_curve(rho: f64, temperature: f64, config: GaussianConfig) -> impl Fn(f64) -> Result<f64> {
    move |gamma| {
        let point = CouplingPoint::from_gamma(rho, gamma, temperature)?;
        Ok(solve_condensed(&point, &config)?.e_dimensionless())
    }
}

/// `e`, the mean-field `μ/ρ² = 2γ(1 - A/ρ + B/ρ)` and the compressibility `v_s/ρ` at one coupling.
pub fn gaussian_thermo(gamma: f64, rho: f64, temperature: f64, config: GaussianConfig) -> Result<ThermoValues> {
    let point = CouplingPoint::from_gamma(rho, gamma, temperature)?;
    let sol = solve_condensed(&point, &config)?;
    let curve = energy_curve(rho, temperature, config);
    let domain = Interval::new(0.0, f64::INFINITY);
    let mu_thermo = |g: f64| thermo::chemical_potential_from(&curve, g, domain);
    let vs = thermo::sound_velocity_from(mu_thermo, gamma, domain)?;
    Ok(ThermoValues {
        e: sol.e_dimensionless(),
        mu: sol.mu / (rho * rho),
        vs,
    })
}

/// Condensed-phase sweep at fixed `ρ` and `T`.
pub fn sweep_gaussian(gamma_grid: &[f64], rho: f64, temperature: f64, config: GaussianConfig) -> Result<ThermoCurve> {
    check_grid(gamma_grid)?;
    let results: Vec<_> = gamma_grid
        .iter()
        .map(|&g| gaussian_thermo(g, rho, temperature, config))
        .collect();
    ThermoCurve::from_results(MethodTag::Gaussian, gamma_grid, results)
}

use alloc::format;
use alloc::vec::Vec;

use super::{functional, GaussianConfig, GaussianSolution, Moments, Phase};
use crate::error::{bail_arg, Error, Result};
use crate::math::{expm1, sqrt};
use crate::numerics::{damped_fixed_point, halfline_grid, FixedPointOptions, QuadratureGrid, SolverReport};
use crate::point::CouplingPoint;

/// Bogoliubov angles and thermal occupations of one Gaussian state, sampled
/// on the half-line momentum grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BogolyubovParams {
    pub grid: QuadratureGrid,
    /// `cosh 2σ_k - 1`, kept separately so the large-`k` tail does not cancel.
    pub cosh_m1: Vec<f64>,
    pub sinh_2sigma: Vec<f64>,
    /// `ν_k`, identically zero at `T = 0`.
    pub nu: Vec<f64>,
    /// Quasiparticle energy `e_g(k)`.
    pub energy: Vec<f64>,
}

impl BogolyubovParams {
    /// Mean-field modes generated by the moments `(A, B)`.
    pub fn from_moments(point: &CouplingPoint, a: f64, b: f64, grid: &QuadratureGrid) -> Result<Self> {
        let n = grid.len();
        let mut out = Self {
            grid: grid.clone(),
            cosh_m1: Vec::with_capacity(n),
            sinh_2sigma: Vec::with_capacity(n),
            nu: Vec::with_capacity(n),
            energy: Vec::with_capacity(n),
        };
        let (rho, c, t) = (point.rho(), point.c(), point.temperature());
        let s_plus = rho - b + a;
        let d = 2.0 * c * (rho - b - a);
        for &k in grid.nodes() {
            let e = k * k;
            let x = e + 2.0 * c * s_plus;
            let delta = spectrum_radicand(e, c, rho, a, b);
            if !(delta > 0.0) || !(x > 0.0) {
                return Err(Error::NegativeRadicand {
                    what: "gaussian spectrum",
                    value: delta,
                });
            }
            let sq = sqrt(delta);
            out.cosh_m1.push(d * d / (sq * (x + sq)));
            out.sinh_2sigma.push(d / sq);
            out.nu.push(if t > 0.0 { 1.0 / expm1(sq / t) } else { 0.0 });
            out.energy.push(sq);
        }
        Ok(out)
    }

    pub fn tanh_2sigma(&self) -> Vec<f64> {
        self.sinh_2sigma
            .iter()
            .zip(&self.cosh_m1)
            .map(|(s, cm)| s / (1.0 + cm))
            .collect()
    }

    /// `(A, B, C)` carried by these modes.
    pub fn moments(&self) -> Moments {
        let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
        for (i, (k, w)) in self.grid.iter().enumerate() {
            let nu = self.nu[i];
            let f = 1.0 + 2.0 * nu;
            let occ = f * self.cosh_m1[i] + 2.0 * nu;
            a += w * f * self.sinh_2sigma[i];
            b += w * occ;
            c += w * k * k * occ;
        }
        let norm = core::f64::consts::FRAC_1_PI / 2.0;
        Moments {
            a: a * norm,
            b: b * norm,
            c: c * norm,
        }
    }
}

/// `e² + 4c·e·(ρ - B + A) + 16c²(ρ - B)A`.
fn spectrum_radicand(e: f64, c: f64, rho: f64, a: f64, b: f64) -> f64 {
    e * e + 4.0 * c * e * (rho - b + a) + 16.0 * c * c * (rho - b) * a
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumSample {
    pub k: f64,
    pub energy: f64,
}

/// Quasiparticle spectrum `e_g(k)` of the condensed phase.
pub fn gaussian_spectrum(point: &CouplingPoint, a: f64, b: f64, k_grid: &[f64]) -> Result<Vec<SpectrumSample>> {
    let (rho, c) = (point.rho(), point.c());
    k_grid
        .iter()
        .map(|&k| {
            let e = k * k;
            let delta = spectrum_radicand(e, c, rho, a, b);
            if !(delta >= 0.0) {
                return Err(Error::NegativeRadicand {
                    what: "gaussian spectrum",
                    value: delta,
                });
            }
            Ok(SpectrumSample { k, energy: sqrt(delta) })
        })
        .collect()
}

const MIN_DAMPING: f64 = 1.0 / 64.0;

pub(super) fn momentum_grid(point: &CouplingPoint, config: &GaussianConfig) -> Result<QuadratureGrid> {
    let scale = sqrt(point.c() * point.rho()).max(sqrt(point.temperature()));
    halfline_grid(config.nodes, scale, config.k_max)
}

fn check_phase(point: &CouplingPoint, a: f64, b: f64) -> Result<()> {
    if !(a > 0.0) {
        return Err(Error::InvalidPhase(format!("pairing moment A = {a} is not positive")));
    }
    if !(b < point.rho()) {
        return Err(Error::InvalidPhase(format!(
            "depletion B = {b} reaches the density {}",
            point.rho()
        )));
    }
    Ok(())
}

fn gap_map(point: &CouplingPoint, grid: &QuadratureGrid, ab: &[f64]) -> Result<Vec<f64>> {
    check_phase(point, ab[0], ab[1])?;
    let m = BogolyubovParams::from_moments(point, ab[0], ab[1], grid)?.moments();
    Ok(alloc::vec![m.a, m.b])
}

/// Max defect of the two gap equations at `(A, B)` on `grid`.
pub fn gap_residual(point: &CouplingPoint, a: f64, b: f64, grid: &QuadratureGrid) -> Result<f64> {
    let next = gap_map(point, grid, &[a, b])?;
    Ok(f64::max((next[0] - a).abs(), (next[1] - b).abs()))
}

/// Self-consistent condensed solution of the gap equations.
pub fn solve_condensed(point: &CouplingPoint, config: &GaussianConfig) -> Result<GaussianSolution> {
    if !(config.tol > 0.0) {
        bail_arg!("tolerance must be positive, got {}", config.tol);
    }
    if !(config.damping > 0.0 && config.damping <= 1.0) {
        bail_arg!("damping must lie in (0, 1], got {}", config.damping);
    }
    let (rho, c) = (point.rho(), point.c());
    if c == 0.0 {
        let zero = Moments { a: 0.0, b: 0.0, c: 0.0 };
        return Ok(GaussianSolution {
            point: *point,
            phase: Phase::Condensed,
            moments: zero,
            condensate_density: rho,
            mu: 0.0,
            energy_per_particle: 0.0,
            free_energy_density: 0.0,
            residual: 0.0,
            report: SolverReport {
                iterations: 0,
                residual: 0.0,
                converged: true,
                nodes_used: 0,
            },
        });
    }
    let grid = momentum_grid(point, config)?;
    let start = config.initial.unwrap_or_else(|| {
        let a0 = rho * sqrt(point.gamma()) / (2.0 * core::f64::consts::PI);
        (a0, 0.5 * a0)
    });
    check_phase(point, start.0, start.1)?;

    let mut damping = config.damping;
    let mut last_err = None;
    let mut iterations = 0;
    while damping >= MIN_DAMPING {
        let opts = FixedPointOptions {
            damping,
            tol: config.tol,
            max_iter: config.max_iter,
        };
        match damped_fixed_point(|x| gap_map(point, &grid, x), &[start.0, start.1], opts) {
            Ok(out) if out.report.converged => {
                let mut sol = assemble(point, out.x[0], out.x[1], &grid)?;
                sol.report.iterations = iterations + out.report.iterations;
                return Ok(sol);
            }
            Ok(out) => {
                iterations += out.report.iterations;
                last_err = Some(Error::NotConverged {
                    what: "gaussian gap equations",
                    iterations,
                    residual: out.report.residual,
                });
            }
            Err(e @ (Error::InvalidPhase(_) | Error::NegativeRadicand { .. })) => last_err = Some(e),
            Err(e) => return Err(e),
        }
        damping *= 0.5;
    }
    Err(last_err.unwrap_or(Error::NonFinite("gaussian gap equations")))
}

fn assemble(point: &CouplingPoint, a: f64, b: f64, grid: &QuadratureGrid) -> Result<GaussianSolution> {
    check_phase(point, a, b)?;
    let modes = BogolyubovParams::from_moments(point, a, b, grid)?;
    let next = modes.moments();
    let residual = f64::max((next.a - a).abs(), (next.b - b).abs());
    let moments = Moments { a, b, c: next.c };
    let (rho, c) = (point.rho(), point.c());
    Ok(GaussianSolution {
        point: *point,
        phase: Phase::Condensed,
        moments,
        condensate_density: rho - b,
        mu: 2.0 * c * (rho - a + b),
        energy_per_particle: functional::gaussian_energy(point, a, b, next.c)?,
        free_energy_density: functional::free_energy(point, a, b, next.c, &modes.grid, &modes.nu)?,
        residual,
        report: SolverReport {
            iterations: 0,
            residual,
            converged: true,
            nodes_used: grid.len(),
        },
    })
}

/// Modes of a converged condensed solution on its own grid.
pub fn solution_modes(sol: &GaussianSolution, config: &GaussianConfig) -> Result<BogolyubovParams> {
    let grid = momentum_grid(&sol.point, config)?;
    BogolyubovParams::from_moments(&sol.point, sol.moments.a, sol.moments.b, &grid)
}

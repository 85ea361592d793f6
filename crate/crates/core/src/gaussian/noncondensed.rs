use alloc::format;

use super::{functional, GaussianConfig, GaussianSolution, Moments, Phase};
use crate::error::{bail_arg, Error, Result};
use crate::math::{expm1, sqrt};
use crate::numerics::{halfline_grid, try_brent_root, QuadratureGrid, SolverReport};
use crate::point::CouplingPoint;

/// Ideal-Bose density `(1/2π) ∫ dk / (exp((k² + s)/T) - 1)` over the real line.
pub fn bose_density(grid: &QuadratureGrid, s: f64, temperature: f64) -> f64 {
    grid.integrate(|k| 1.0 / expm1((k * k + s) / temperature)) / core::f64::consts::PI
}

fn thermal_grid(s: f64, temperature: f64, config: &GaussianConfig) -> Result<QuadratureGrid> {
    let scale = sqrt(s).min(sqrt(temperature));
    halfline_grid(config.nodes, scale, config.k_max)
}

/// Non-condensed phase: `A = 0`, `σ_k = 0`, spectrum `k² - μ + 4cρ`, with `μ`
/// fixed by the density.
pub fn solve_noncondensed(point: &CouplingPoint, config: &GaussianConfig) -> Result<GaussianSolution> {
    let (rho, c, t) = (point.rho(), point.c(), point.temperature());
    if t == 0.0 {
        return Err(Error::InvalidPhase(format!("the non-condensed phase needs T > 0, got {t}")));
    }
    if !(config.tol > 0.0) {
        bail_arg!("tolerance must be positive, got {}", config.tol);
    }
    // Degenerate limit ρ ≈ √T/(2√s).
    let guess = t * t / (4.0 * rho * rho);
    let defect = |s: f64| -> Result<f64> {
        let grid = thermal_grid(s, t, config)?;
        Ok(bose_density(&grid, s, t) - rho)
    };
    let mut lo = 0.25 * guess;
    let mut hi = 4.0 * guess;
    for _ in 0..200 {
        if defect(lo)? > 0.0 {
            break;
        }
        lo *= 0.25;
    }
    for _ in 0..200 {
        if defect(hi)? < 0.0 {
            break;
        }
        hi *= 4.0;
    }
    let s = try_brent_root(defect, lo, hi, config.tol * rho)?;
    let grid = thermal_grid(s, t, config)?;
    let residual = (bose_density(&grid, s, t) - rho).abs();
    let c_kin = grid.integrate(|k| k * k / expm1((k * k + s) / t)) / core::f64::consts::PI;
    let nu: alloc::vec::Vec<f64> = grid.nodes().iter().map(|&k| 1.0 / expm1((k * k + s) / t)).collect();
    let mu = 4.0 * c * rho - s;
    Ok(GaussianSolution {
        point: *point,
        phase: Phase::NonCondensed,
        moments: Moments { a: 0.0, b: rho, c: c_kin },
        condensate_density: 0.0,
        mu,
        energy_per_particle: functional::gaussian_energy(point, 0.0, rho, c_kin)?,
        free_energy_density: functional::free_energy(point, 0.0, rho, c_kin, &grid, &nu)?,
        residual,
        report: SolverReport {
            iterations: 0,
            residual,
            converged: residual <= 1e-10 * rho.max(1.0),
            nodes_used: grid.len(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(t: f64) -> CouplingPoint {
        CouplingPoint::new(1.0, 1.0, t).unwrap()
    }

    #[test]
    fn zero_temperature_is_refused() {
        let r = solve_noncondensed(&unit(0.0), &GaussianConfig::default());
        assert!(matches!(r, Err(Error::InvalidPhase(_))));
    }

    #[test]
    fn chemical_potential_approaches_mean_field_shift() {
        let cfg = GaussianConfig::default();
        let dist: alloc::vec::Vec<f64> = [0.5, 0.2, 0.1]
            .iter()
            .map(|&t| (solve_noncondensed(&unit(t), &cfg).unwrap().mu - 4.0).abs())
            .collect();
        assert!(dist[0] > dist[1] && dist[1] > dist[2]);
    }

    #[test]
    fn density_is_reproduced() {
        let s = solve_noncondensed(&unit(0.2), &GaussianConfig::default()).unwrap();
        assert!(s.residual < 1e-10);
        assert_eq!(s.a(), 0.0);
        assert_eq!(s.condensate_density, 0.0);
        assert!(s.free_energy_density < s.energy_per_particle);
    }

    #[test]
    fn ideal_gas_limit() {
        let p = CouplingPoint::new(0.3, 0.0, 2.0).unwrap();
        let s = solve_noncondensed(&p, &GaussianConfig::default()).unwrap();
        assert!(s.mu < 0.0);
        let grid = halfline_grid(256, 1.0, f64::INFINITY).unwrap();
        assert!((bose_density(&grid, -s.mu, 2.0) - 0.3).abs() < 1e-10);
        assert!((s.energy_per_particle - s.c_kinetic() / 0.3).abs() < 1e-14);
    }
}

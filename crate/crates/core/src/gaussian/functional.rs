use super::condensed::BogolyubovParams;
use crate::error::{bail_arg, Result};
use crate::math::{ln, ln1p};
use crate::numerics::QuadratureGrid;
use crate::point::CouplingPoint;

/// Energy density `E/L` of a Gaussian state with moments `(A, B, C)` at density `ρ`.
fn energy_density(point: &CouplingPoint, a: f64, b: f64, c_kin: f64) -> f64 {
    let (rho, c) = (point.rho(), point.c());
    c_kin - 2.0 * c * rho * (a - b) + c * (rho * rho + a * a - b * b) + 2.0 * c * a * b
}

/// `E/N = C/ρ - 2c(A - B) + (c/ρ)(ρ² + A² - B²) + 2(c/ρ)AB`.
pub fn gaussian_energy(point: &CouplingPoint, a: f64, b: f64, c_kin: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && c_kin.is_finite()) {
        bail_arg!("moments must be finite, got A = {a}, B = {b}, C = {c_kin}");
    }
    Ok(energy_density(point, a, b, c_kin) / point.rho())
}

/// Mean-field entropy density `(1/2π) ∫ [(1+ν)ln(1+ν) - ν ln ν] dk` over the real line.
fn entropy_density(grid: &QuadratureGrid, nu: &[f64]) -> Result<f64> {
    if nu.len() != grid.len() {
        bail_arg!("occupation count {} does not match the grid size {}", nu.len(), grid.len());
    }
    let mut s = 0.0;
    for (&v, &w) in nu.iter().zip(grid.weights()) {
        if !(v >= 0.0) {
            bail_arg!("occupation must be non-negative, got {v}");
        }
        if v > 0.0 {
            s += w * ((1.0 + v) * ln1p(v) - v * ln(v));
        }
    }
    Ok(s / core::f64::consts::PI)
}

/// `F/L = E/L - T·S/L`.
pub fn free_energy(point: &CouplingPoint, a: f64, b: f64, c_kin: f64, grid: &QuadratureGrid, nu: &[f64]) -> Result<f64> {
    let s = entropy_density(grid, nu)?;
    let t = point.temperature();
    let ts = if t > 0.0 { t * s } else { 0.0 };
    Ok(gaussian_energy(point, a, b, c_kin)? * point.rho() - ts)
}

/// `F/L` of the Gaussian state whose modes are generated by trial moments
/// `(A', B')`. The state carries its own moments, which differ from the
/// trial ones unless `(A', B')` solves the gap equations; the density stays
/// at `ρ` by adjusting the condensate.
pub fn trial_free_energy(point: &CouplingPoint, a_trial: f64, b_trial: f64, grid: &QuadratureGrid) -> Result<f64> {
    let modes = BogolyubovParams::from_moments(point, a_trial, b_trial, grid)?;
    let m = modes.moments();
    free_energy(point, m.a, m.b, m.c, grid, &modes.nu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{solve_condensed, GaussianConfig};
    use crate::numerics::halfline_grid;

    #[test]
    fn hartree_term_alone() {
        let p = CouplingPoint::new(1.5, 0.7, 0.0).unwrap();
        assert!((gaussian_energy(&p, 0.0, 0.0, 0.0).unwrap() - 0.7 * 1.5).abs() < 1e-15);
        assert!(gaussian_energy(&p, f64::NAN, 0.0, 0.0).is_err());
    }

    #[test]
    fn zero_temperature_free_energy_is_energy() {
        let p = CouplingPoint::from_gamma(1.0, 1.0, 0.0).unwrap();
        let s = solve_condensed(&p, &GaussianConfig::default()).unwrap();
        assert_eq!(s.free_energy_density, s.energy_per_particle * p.rho());
    }

    #[test]
    fn empty_modes_carry_no_entropy() {
        let p = CouplingPoint::new(1.0, 1.0, 0.5).unwrap();
        let grid = halfline_grid(16, 1.0, f64::INFINITY).unwrap();
        let f = free_energy(&p, 0.2, 0.1, 0.3, &grid, &[0.0; 16]).unwrap();
        assert_eq!(f, gaussian_energy(&p, 0.2, 0.1, 0.3).unwrap());
        let mut nu = [0.0; 16];
        nu[3] = -1e-3;
        assert!(free_energy(&p, 0.2, 0.1, 0.3, &grid, &nu).is_err());
        assert!(free_energy(&p, 0.2, 0.1, 0.3, &grid, &nu[..4]).is_err());
    }

    #[test]
    fn solution_is_a_local_minimum() {
        let p = CouplingPoint::from_gamma(1.0, 1.0, 0.1).unwrap();
        let cfg = GaussianConfig::default();
        let s = solve_condensed(&p, &cfg).unwrap();
        let grid = halfline_grid(cfg.nodes, 1.0, f64::INFINITY).unwrap();
        let f0 = trial_free_energy(&p, s.a(), s.b(), &grid).unwrap();
        assert!((f0 - s.free_energy_density).abs() < 1e-10);
        let d = 1e-3;
        for (da, db) in [(d, d), (d, -d), (-d, d), (-d, -d)] {
            let f = trial_free_energy(&p, s.a() + da, s.b() + db, &grid).unwrap();
            assert!(f >= f0, "({da}, {db}): {f} < {f0}");
        }
    }
}

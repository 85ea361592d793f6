//! Bogoliubov theory: the Gaussian functional truncated to first order in
//! `c`, with `tanh 2σ_k = 2cρ/(k² + 2cρ)` and no thermal occupation.

use crate::error::{bail_arg, Error, Result};
use crate::math::sqrt;
use crate::numerics::halfline_grid;

use core::f64::consts::PI;

/// Closed-form perturbative thermodynamics at one coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovResult {
    pub gamma: f64,
    /// `E/(N ρ²) = γ - 4γ^{3/2}/3π`.
    pub e: f64,
    /// `μ/ρ² = 2γ(1 - √γ/π)`.
    pub mu: f64,
    /// `v_s/ρ = 2(γ - γ^{3/2}/2π)^{1/2}` from the compressibility; NaN for `γ > 4π²`.
    pub vs_compressibility: f64,
    /// `v_s/ρ = 2√γ` from the phonon slope of `ε(p)`.
    pub vs_spectrum: f64,
}

impl BogoliubovResult {
    /// `ε(p)` at density `ρ`.
    pub fn spectrum(&self, p: f64, rho: f64) -> f64 {
        bogoliubov_dispersion(p, self.gamma, rho)
    }
}

pub fn perturbative(gamma: f64) -> Result<BogoliubovResult> {
    if !(gamma >= 0.0 && gamma.is_finite()) {
        bail_arg!("gamma must be non-negative and finite, got {gamma}");
    }
    let g32 = gamma * sqrt(gamma);
    Ok(BogoliubovResult {
        gamma,
        e: gamma - 4.0 * g32 / (3.0 * PI),
        mu: 2.0 * gamma * (1.0 - sqrt(gamma) / PI),
        vs_compressibility: 2.0 * sqrt(gamma - g32 / (2.0 * PI)),
        vs_spectrum: 2.0 * sqrt(gamma),
    })
}

/// `ε(p) = √(p⁴ + 4cρp²)` with `c = γρ`.
pub fn bogoliubov_dispersion(p: f64, gamma: f64, rho: f64) -> f64 {
    let c = gamma * rho;
    let p2 = p * p;
    sqrt(p2 * p2 + 4.0 * c * rho * p2)
}

/// `ε(k) - k² - 2cρ`, evaluated without cancellation at large `k`.
pub fn combined_integrand(k: f64, c: f64, rho: f64) -> f64 {
    let a = 4.0 * c * rho;
    let k2 = k * k;
    let eps = sqrt(k2 * k2 + a * k2);
    let s = eps + k2;
    if s == 0.0 {
        return -0.5 * a;
    }
    -0.5 * a * a * k2 / (s * s)
}

/// The same integrand written through the Bogoliubov angles:
/// `(k² + 2cρ)(cosh 2σ - 1) - 2cρ·sinh 2σ`.
pub fn angle_integrand(k: f64, c: f64, rho: f64) -> f64 {
    let x = k * k + 2.0 * c * rho;
    let d = 2.0 * c * rho;
    let eps = sqrt(x * x - d * d);
    let cosh_m1 = d * d / (eps * (x + eps));
    let sinh = d / eps;
    x * cosh_m1 - d * sinh
}

/// `∫ [ε(k) - k² - 2cρ] dk` over the real line on an `n`-node half-line grid.
pub fn combined_integral(c: f64, rho: f64, n_nodes: usize) -> Result<f64> {
    let scale = sqrt(c * rho);
    let grid = halfline_grid(n_nodes, scale, f64::INFINITY)?;
    Ok(2.0 * grid.integrate(|k| combined_integrand(k, c, rho)))
}

const TAIL_TOL: f64 = 1e-9;

/// `E/N` of the truncated functional, `E/L = cρ² + (1/4π)∫[ε - k² - 2cρ]dk`,
/// by quadrature. Cross-checked against a doubled grid.
pub fn truncated_functional_check(gamma: f64, rho: f64, n_nodes: usize) -> Result<f64> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        bail_arg!("gamma must be positive and finite, got {gamma}");
    }
    if !(rho > 0.0 && rho.is_finite()) {
        bail_arg!("density must be positive, got {rho}");
    }
    let c = gamma * rho;
    let coarse = combined_integral(c, rho, n_nodes)?;
    let fine = combined_integral(c, rho, 2 * n_nodes)?;
    let scale = (c * rho) * sqrt(c * rho);
    let drift = (fine - coarse).abs() / scale;
    if !(drift <= TAIL_TOL) {
        return Err(Error::NotConverged {
            what: "truncated functional quadrature",
            iterations: 2,
            residual: drift,
        });
    }
    let e_per_length = c * rho * rho + fine / (4.0 * PI);
    Ok(e_per_length / rho)
}

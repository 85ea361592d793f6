use crate::error::{bail_arg, Result};

/// Physical parameters of one calculation: density `ρ`, interaction
/// half-amplitude `c` (potential `2c δ`), `γ = c/ρ` and temperature `T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingPoint {
    rho: f64,
    c: f64,
    temperature: f64,
}

impl CouplingPoint {
    pub fn new(rho: f64, c: f64, temperature: f64) -> Result<Self> {
        if !(rho > 0.0 && rho.is_finite()) {
            bail_arg!("density must be positive, got {rho}");
        }
        if !(c >= 0.0 && c.is_finite()) {
            bail_arg!("coupling c must be non-negative, got {c}");
        }
        if !(temperature >= 0.0 && temperature.is_finite()) {
            bail_arg!("temperature must be non-negative, got {temperature}");
        }
        Ok(Self { rho, c, temperature })
    }

    /// Point with `c = γ ρ`.
    pub fn from_gamma(rho: f64, gamma: f64, temperature: f64) -> Result<Self> {
        if !(gamma >= 0.0) {
            bail_arg!("gamma must be non-negative, got {gamma}");
        }
        Self::new(rho, gamma * rho, temperature)
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn gamma(&self) -> f64 {
        self.c / self.rho
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// Free dispersion `e(k) = k²`.
    pub fn kinetic(k: f64) -> f64 {
        k * k
    }
}

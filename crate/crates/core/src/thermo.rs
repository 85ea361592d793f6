//! Thermodynamics at fixed density from a dimensionless energy curve `e(γ)`,
//! plus the sampled-curve container shared by all three methods.
//!
//! With `E₀ = L ρ³ e(γ)` and `γ = c/ρ`, holding `L` and `c` fixed gives
//! `μ/ρ² = 3e - γ e'(γ)`, and the compressibility sound velocity is
//! `v_s/ρ = 2 (μ̃ - γ μ̃'/2)^{1/2}` with `μ̃ = μ/ρ²`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{bail_arg, Error, Result};
use crate::math::sqrt;
use crate::numerics::{richardson_derivative, Interval};

/// Default derivative step `h0 = 1e-3 · max(γ, 1)`.
pub fn default_step(gamma: f64) -> f64 {
    1e-3 * gamma.max(1.0)
}

/// `μ/ρ²` from an energy curve by one Richardson-extrapolated derivative.
pub fn chemical_potential_from<F>(mut energy: F, gamma: f64, domain: Interval) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let e = energy(gamma)?;
    let de = richardson_derivative(&mut energy, gamma, default_step(gamma), domain)?;
    Ok(3.0 * e - gamma * de.value)
}

/// `v_s/ρ` from a chemical-potential curve `μ̃(γ)`.
pub fn sound_velocity_from<F>(mut mu: F, gamma: f64, domain: Interval) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let m = mu(gamma)?;
    let dm = richardson_derivative(&mut mu, gamma, default_step(gamma), domain)?;
    sound_velocity_formula(m, dm.value, gamma)
}

/// `2 (μ̃ - γ μ̃'/2)^{1/2}`; a negative radicand signals a broken derivative.
pub fn sound_velocity_formula(mu: f64, dmu: f64, gamma: f64) -> Result<f64> {
    let radicand = mu - 0.5 * gamma * dmu;
    if !(radicand >= 0.0) {
        return Err(Error::NegativeRadicand {
            what: "sound velocity",
            value: radicand,
        });
    }
    Ok(2.0 * sqrt(radicand))
}

/// `e`, `μ/ρ²` and `v_s/ρ` at one coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoValues {
    pub e: f64,
    pub mu: f64,
    pub vs: f64,
}

/// Energy, chemical potential and sound velocity from one energy curve.
pub fn thermo_from_energy<F>(energy: F, gamma: f64, domain: Interval) -> Result<ThermoValues>
where
    F: Fn(f64) -> Result<f64>,
{
    let e = energy(gamma)?;
    let mu_at = |g: f64| chemical_potential_from(&energy, g, domain);
    let mu = mu_at(gamma)?;
    let vs = sound_velocity_from(mu_at, gamma, domain)?;
    Ok(ThermoValues { e, mu, vs })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodTag {
    Exact,
    Gaussian,
    Bogoliubov,
}

impl MethodTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            MethodTag::Exact => "exact",
            MethodTag::Gaussian => "gaussian",
            MethodTag::Bogoliubov => "bogoliubov",
        }
    }
}

impl fmt::Display for MethodTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `e(γ)`, `μ/ρ²`, `v_s/ρ` sampled on an increasing `γ` grid. Points whose
/// solve failed hold NaN and are listed in `failures`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermoCurve {
    pub method: MethodTag,
    pub gamma: Vec<f64>,
    pub e: Vec<f64>,
    pub mu: Vec<f64>,
    pub vs: Vec<f64>,
    pub failures: Vec<(usize, String)>,
}

impl ThermoCurve {
    /// Assembles a curve from per-point results, in grid order.
    pub fn from_results<I>(method: MethodTag, gamma: &[f64], results: I) -> Result<Self>
    where
        I: IntoIterator<Item = Result<ThermoValues>>,
    {
        check_grid(gamma)?;
        let mut curve = ThermoCurve {
            method,
            gamma: gamma.to_vec(),
            e: Vec::with_capacity(gamma.len()),
            mu: Vec::with_capacity(gamma.len()),
            vs: Vec::with_capacity(gamma.len()),
            failures: Vec::new(),
        };
        for (i, r) in results.into_iter().enumerate() {
            match r {
                Ok(v) => {
                    curve.e.push(v.e);
                    curve.mu.push(v.mu);
                    curve.vs.push(v.vs);
                }
                Err(err) => {
                    curve.e.push(f64::NAN);
                    curve.mu.push(f64::NAN);
                    curve.vs.push(f64::NAN);
                    curve.failures.push((i, alloc::format!("{err}")));
                }
            }
        }
        if curve.e.len() != gamma.len() {
            bail_arg!("got {} results for {} grid points", curve.e.len(), gamma.len());
        }
        Ok(curve)
    }

    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }
}

pub(crate) fn check_grid(gamma: &[f64]) -> Result<()> {
    if gamma.is_empty() {
        bail_arg!("gamma grid is empty");
    }
    if gamma.windows(2).any(|w| !(w[0] < w[1])) {
        bail_arg!("gamma grid must be strictly increasing");
    }
    Ok(())
}

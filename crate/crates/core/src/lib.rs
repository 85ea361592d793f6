//! Ground-state and excitation properties of the one-dimensional Bose gas
//! with repulsive contact interaction `2c δ(x - x')`, computed three ways:
//!
//! * [`exact_ground`] and [`exact_excitations`]: the Lieb-Liniger Fredholm
//!   equations, solved by Nyström discretization.
//! * [`gaussian`]: the self-consistent Gaussian (Hartree-Fock-Bogoliubov)
//!   mean field at zero and finite temperature.
//! * [`bogoliubov`]: closed-form perturbative results and a numerical check
//!   of the truncated functional they come from.
//!
//! Units throughout: `ħ = 1`, `2m = 1` (free dispersion `e(k) = k²`),
//! Boltzmann constant 1. Thermodynamic outputs are reported in the
//! dimensionless forms `E/N = ρ² e(γ)`, `μ/ρ²`, `v_s/ρ` with `γ = c/ρ`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![deny(unsafe_code)]
// `!(x > 0.0)` style guards reject NaN on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
mod math;

pub mod bogoliubov;
pub mod exact_excitations;
pub mod exact_ground;
pub mod gaussian;
pub mod numerics;
pub mod point;
pub mod thermo;

pub use error::{Error, Result};
pub use point::CouplingPoint;
pub use thermo::{MethodTag, ThermoCurve, ThermoValues};

use super::condensed::BogolyubovParams;
use crate::error::{bail_arg, Result};

/// The two mode sums of the number variance:
/// `s1 = Σ [x²ν + (1+ν)y²]` and `s2 = Σ {[x²ν + (1+ν)y²]² + x²y²(1+2ν)²}`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ModeSums {
    pub s1: f64,
    pub s2: f64,
}

impl ModeSums {
    /// Sums over explicit modes `(x_k, y_k, ν_k)`.
    pub fn from_modes<I: IntoIterator<Item = (f64, f64, f64)>>(modes: I) -> Self {
        let mut out = Self::default();
        for (x, y, nu) in modes {
            let occ = x * x * nu + (1.0 + nu) * y * y;
            let pair = x * y * (1.0 + 2.0 * nu);
            out.s1 += occ;
            out.s2 += occ * occ + pair * pair;
        }
        out
    }

    /// Sums per unit length in the thermodynamic limit.
    pub fn per_length(modes: &BogolyubovParams) -> Self {
        let mut out = Self::default();
        for (i, &w) in modes.grid.weights().iter().enumerate() {
            let nu = modes.nu[i];
            let f = 1.0 + 2.0 * nu;
            let occ = 0.5 * (f * modes.cosh_m1[i] + 2.0 * nu);
            let pair = 0.5 * modes.sinh_2sigma[i] * f;
            out.s1 += w * occ;
            out.s2 += w * (occ * occ + pair * pair);
        }
        let norm = core::f64::consts::FRAC_1_PI;
        out.s1 *= norm;
        out.s2 *= norm;
        out
    }
}

/// `⟨N²⟩ - ⟨N⟩²` for a real condensate amplitude `Γ₀` and real zero-mode
/// parameters `x₀, y₀`:
///
/// ```text
/// 2Γ₀²[x₀²ν₀ + y₀²(1+ν₀)] - 2Γ₀²x₀y₀(1+2ν₀) + Γ₀² + s1 + s2
/// ```
///
/// The cross term is the Wick contraction `Γ₀²(⟨φ₀φ₀⟩ + ⟨φ₀†φ₀†⟩)` with
/// `⟨φ₀φ₀⟩ = -x₀y₀(1+2ν₀)`.
pub fn number_variance(gamma0: f64, x0: f64, y0: f64, nu0: f64, sums: ModeSums) -> Result<f64> {
    let canon = x0 * x0 - y0 * y0 - 1.0;
    if !(canon.abs() <= 1e-10 * x0 * x0) {
        bail_arg!("zero mode violates x² - y² = 1 (defect {canon})");
    }
    if !(nu0 >= 0.0) {
        bail_arg!("occupation must be non-negative, got {nu0}");
    }
    let g2 = gamma0 * gamma0;
    Ok(2.0 * g2 * (x0 * x0 * nu0 + y0 * y0 * (1.0 + nu0)) - 2.0 * g2 * x0 * y0 * (1.0 + 2.0 * nu0) + g2 + sums.s1 + sums.s2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{solution_modes, solve_condensed, GaussianConfig};
    use crate::point::CouplingPoint;

    #[test]
    fn coherent_state_is_poissonian() {
        let v = number_variance(1.7, 1.0, 0.0, 0.0, ModeSums::default()).unwrap();
        assert!((v - 1.7 * 1.7).abs() < 1e-15);
    }

    #[test]
    fn thermal_modes_without_condensate() {
        let nus = [0.0, 0.3, 1.2, 4.0];
        let sums = ModeSums::from_modes(nus.iter().map(|&n| (1.0, 0.0, n)));
        let v = number_variance(0.0, 1.0, 0.0, 0.7, sums).unwrap();
        let expected: f64 = nus.iter().map(|n| n + n * n).sum();
        assert!((v - expected).abs() < 1e-14);
    }

    #[test]
    fn displaced_squeezed_vacuum() {
        let (g0, sigma) = (1.3f64, 0.4f64);
        let (x, y) = (sigma.cosh(), sigma.sinh());
        let sums = ModeSums::from_modes([(x, y, 0.0)]);
        let v = number_variance(g0, x, y, 0.0, sums).unwrap();
        let expected = g0 * g0 * (-2.0 * sigma).exp() + 0.5 * (2.0 * sigma).sinh().powi(2);
        assert!((v - expected).abs() < 1e-13);
    }

    #[test]
    fn canonicity_is_enforced() {
        assert!(number_variance(1.0, 1.0, 0.5, 0.0, ModeSums::default()).is_err());
        assert!(number_variance(1.0, 1.0, 0.0, -0.1, ModeSums::default()).is_err());
    }

    #[test]
    fn converged_solution_has_positive_variance() {
        let p = CouplingPoint::from_gamma(1.0, 1.0, 0.0).unwrap();
        let cfg = GaussianConfig::default();
        let s = solve_condensed(&p, &cfg).unwrap();
        let modes = solution_modes(&s, &cfg).unwrap();
        let sums = ModeSums::per_length(&modes);
        let t0 = modes.sinh_2sigma[0] / (1.0 + modes.cosh_m1[0]);
        let ch = 1.0 / (1.0 - t0 * t0).sqrt();
        let x0 = ((ch + 1.0) / 2.0).sqrt();
        let y0 = ((ch - 1.0) / 2.0).sqrt();
        let v = number_variance(s.condensate_density.sqrt(), x0, y0, 0.0, sums).unwrap();
        assert!(v > 0.0 && v.is_finite());
    }
}

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{bail_arg, Result};
use crate::math::cos;

/// Ratio between the break point of a half-line grid and its scale.
pub const BREAK_FACTOR: f64 = 6.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Finite { a: f64, b: f64 },
    /// `[0, k_max]` split at `k_break`; the outer panel is integrated in `u = 1/k`.
    /// `k_max` may be infinite.
    HalfLine { k_break: f64, k_max: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    domain: Domain,
}

impl QuadratureGrid {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.iter().map(|(x, w)| w * f(x)).sum()
    }

    /// Sum of `weights[i] * values[i]`.
    pub fn dot(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.len());
        self.weights.iter().zip(values).map(|(w, v)| w * v).sum()
    }

    /// The non-negative half of a grid symmetric about zero, for integrals of
    /// even functions: returns nodes `x > 0` with the weights unchanged.
    /// `None` if the grid is not mirror-symmetric with an even node count.
    pub fn positive_half(&self) -> Option<QuadratureGrid> {
        let n = self.len();
        if !n.is_multiple_of(2) {
            return None;
        }
        for i in 0..n / 2 {
            let j = n - 1 - i;
            let scale = self.nodes[j].abs().max(1.0);
            if (self.nodes[i] + self.nodes[j]).abs() > 1e-14 * scale
                || (self.weights[i] - self.weights[j]).abs() > 1e-14 * self.weights[j]
            {
                return None;
            }
        }
        let domain = match self.domain {
            Domain::Finite { b, .. } => Domain::Finite { a: 0.0, b },
            d => d,
        };
        Some(QuadratureGrid {
            nodes: self.nodes[n / 2..].to_vec(),
            weights: self.weights[n / 2..].to_vec(),
            domain,
        })
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, ascending.
fn legendre_reference(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = alloc::vec![0.0; n];
    let mut weights = alloc::vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi-style initial guess, then Newton on P_n.
        let mut x = cos(PI * (i as f64 + 0.75) / (nf + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1e-3) {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // i counts down from the largest root.
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// `n`-point Gauss-Legendre rule mapped to `[a, b]`.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Result<QuadratureGrid> {
    if n < 2 {
        bail_arg!("Gauss-Legendre needs at least 2 nodes, got {n}");
    }
    if !(a.is_finite() && b.is_finite() && a < b) {
        bail_arg!("Gauss-Legendre interval must satisfy a < b, got [{a}, {b}]");
    }
    let (x, w) = legendre_reference(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    Ok(QuadratureGrid {
        nodes: x.iter().map(|t| mid + half * t).collect(),
        weights: w.iter().map(|v| half * v).collect(),
        domain: Domain::Finite { a, b },
    })
}

/// Two-panel grid on `[0, k_max]` for integrands with structure at `k ≲ scale`.
///
/// The inner panel `[0, 6·scale]` is plain Gauss-Legendre, which clusters
/// nodes at `k = 0`. The outer panel `[6·scale, k_max]` is Gauss-Legendre in
/// `u = 1/k`, so power-law tails are integrated without truncation when
/// `k_max` is infinite. If `k_max` lies inside the inner panel a single
/// panel is used.
pub fn halfline_grid(n: usize, scale: f64, k_max: f64) -> Result<QuadratureGrid> {
    if n < 8 {
        bail_arg!("half-line grid needs at least 8 nodes, got {n}");
    }
    if !(scale.is_finite() && scale > 0.0) {
        bail_arg!("half-line mapping scale must be positive and finite, got {scale}");
    }
    if !(k_max > scale) {
        bail_arg!("half-line cutoff {k_max} must exceed the scale {scale}");
    }
    let k_break = BREAK_FACTOR * scale;
    if k_max <= k_break {
        let inner = gauss_legendre(n, 0.0, k_max)?;
        return Ok(QuadratureGrid {
            domain: Domain::HalfLine { k_break: k_max, k_max },
            ..inner
        });
    }
    let n_inner = n.div_ceil(2);
    let n_outer = n - n_inner;
    let inner = gauss_legendre(n_inner, 0.0, k_break)?;
    let (u, wu) = legendre_reference(n_outer);
    let u_lo = 1.0 / k_max;
    let u_hi = 1.0 / k_break;
    let half = 0.5 * (u_hi - u_lo);
    let mid = 0.5 * (u_hi + u_lo);

    let mut nodes = inner.nodes;
    let mut weights = inner.weights;
    // Largest u is smallest k; walk u downwards to keep k ascending.
    for (t, w) in u.iter().zip(&wu).rev() {
        let uu = mid + half * t;
        nodes.push(1.0 / uu);
        weights.push(half * w / (uu * uu));
    }
    Ok(QuadratureGrid {
        nodes,
        weights,
        domain: Domain::HalfLine { k_break, k_max },
    })
}

/// Analytic tail `∫_{k_max}^∞ coef/k^power dk` for `power > 1`.
pub fn power_tail(coef: f64, power: f64, k_max: f64) -> f64 {
    coef / ((power - 1.0) * crate::math::powf(k_max, power - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::vec::Vec;

    #[test]
    fn two_point_rule() {
        let g = gauss_legendre(2, -1.0, 1.0).unwrap();
        let r = 1.0 / 3f64.sqrt();
        assert!((g.nodes()[0] + r).abs() < 1e-15);
        assert!((g.nodes()[1] - r).abs() < 1e-15);
        assert!((g.weights()[0] - 1.0).abs() < 1e-15);
        assert!((g.weights()[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(gauss_legendre(1, -1.0, 1.0).is_err());
        assert!(gauss_legendre(4, 1.0, 1.0).is_err());
        assert!(gauss_legendre(4, 2.0, 1.0).is_err());
        assert!(halfline_grid(7, 1.0, 10.0).is_err());
        assert!(halfline_grid(16, 0.0, 10.0).is_err());
        assert!(halfline_grid(16, 1.0, 0.5).is_err());
    }

    #[test]
    fn x_squared_exact_for_every_order() {
        for n in 2..40 {
            let g = gauss_legendre(n, -1.0, 1.0).unwrap();
            assert!((g.integrate(|x| x * x) - 2.0 / 3.0).abs() < 1e-14, "n = {n}");
        }
    }

    #[test]
    fn polynomial_exactness_and_weight_sum() {
        for &n in &[2usize, 5, 16, 64, 128, 255, 512] {
            let g = gauss_legendre(n, -0.5, 2.0).unwrap();
            assert!((g.weights().iter().sum::<f64>() - 2.5).abs() < 1e-12 * 2.5);
            assert!(g.nodes().windows(2).all(|w| w[0] < w[1]));
            assert!(g.weights().iter().all(|&w| w > 0.0));
            for p in 0..(2 * n).min(40) {
                let exact = (2f64.powi(p as i32 + 1) - (-0.5f64).powi(p as i32 + 1))
                    / (p as f64 + 1.0);
                let got = g.integrate(|x| x.powi(p as i32));
                assert!(
                    (got - exact).abs() <= 1e-12 * exact.abs().max(1.0),
                    "n={n} p={p} got={got} exact={exact}"
                );
            }
        }
    }

    #[test]
    fn lorentzian_matches_closed_form() {
        let g = gauss_legendre(64, -1.0, 1.0).unwrap();
        let got = g.integrate(|x| 1.0 / (0.25 + x * x));
        let exact = 2.0 * 2f64.atan() / 0.5;
        assert!((got - exact).abs() < 1e-10, "{got} vs {exact}");
    }

    #[test]
    fn halfline_quartic_lorentzian() {
        let g = halfline_grid(128, 1.0, f64::INFINITY).unwrap();
        assert!(g.nodes().windows(2).all(|w| w[0] < w[1]));
        assert!(g.weights().iter().all(|&w| w > 0.0));
        let got = g.integrate(|k| 1.0 / (1.0 + k * k).powi(2));
        assert!((got - PI / 4.0).abs() < 1e-9, "{got}");
    }

    #[test]
    fn halfline_inverse_square_tail_is_captured() {
        // ∫_0^∞ dk/(1+k²) = π/2; a 1/k² tail would cost 1/k_max if truncated.
        let g = halfline_grid(96, 1.0, f64::INFINITY).unwrap();
        assert!((g.integrate(|k| 1.0 / (1.0 + k * k)) - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn finite_cutoff_misses_exactly_the_tail() {
        let k_max = 50.0;
        let g = halfline_grid(128, 1.0, k_max).unwrap();
        let got = g.integrate(|k| 1.0 / (1.0 + k * k).powi(2));
        let exact = 0.5 * (k_max / (1.0 + k_max * k_max) + k_max.atan());
        assert!((got - exact).abs() < 1e-12);
        // Dominant c²/k⁴ tail beyond 50√(cρ) at cρ = 1.
        let tail = power_tail(1.0, 4.0, k_max);
        assert!((tail - 1.0 / (3.0 * 125_000.0)).abs() < 1e-18);
        // Next tail term is -2/(5 k_max⁵) ≈ -1.3e-9.
        assert!((PI / 4.0 - got - tail).abs() < 2e-9);
    }

    #[test]
    fn positive_half_of_symmetric_grid() {
        let g = gauss_legendre(32, -1.0, 1.0).unwrap();
        let h = g.positive_half().unwrap();
        assert_eq!(h.len(), 16);
        assert!(h.nodes().iter().all(|&x| x > 0.0));
        assert!((2.0 * h.integrate(|x| x.cos()) - 2.0 * 1f64.sin()).abs() < 1e-14);
        assert!(gauss_legendre(33, -1.0, 1.0).unwrap().positive_half().is_none());
        assert!(gauss_legendre(32, 0.0, 1.0).unwrap().positive_half().is_none());
    }

    #[test]
    fn large_order_rule_is_sane() {
        let g = gauss_legendre(2048, -1.0, 1.0).unwrap();
        let s: f64 = g.weights().iter().sum();
        assert!((s - 2.0).abs() < 1e-12);
        let v: Vec<f64> = g.nodes().to_vec();
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        assert!((g.integrate(|x| x.exp()) - (1f64.exp() - (-1f64).exp())).abs() < 1e-12);
    }
}

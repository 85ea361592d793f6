use std::f64::consts::PI;

use bosegas_core::exact_ground::ground_energy;
use bosegas_core::gaussian::{gaussian_spectrum, solve_condensed, solve_noncondensed, GaussianConfig};
use bosegas_core::CouplingPoint;
use proptest::prelude::*;

/// `∫₀^∞ f` by double-exponential quadrature after `k = s·t/(1 - t)`.
fn halfline_de<F: Fn(f64) -> f64>(f: F, s: f64) -> f64 {
    let g = |t: f64| {
        if t >= 1.0 {
            return 0.0;
        }
        let k = s * t / (1.0 - t);
        f(k) * s / ((1.0 - t) * (1.0 - t))
    };
    quadrature::double_exponential::integrate(g, 0.0, 1.0, 1e-15).integral
}

/// `(A, B, C)` generated by `(A, B)`, integrated independently of the library.
fn moments_oracle(p: &CouplingPoint, a: f64, b: f64) -> (f64, f64, f64) {
    let (rho, c, t) = (p.rho(), p.c(), p.temperature());
    let parts = |k: f64| {
        let e = k * k;
        let x = e + 2.0 * c * (rho - b + a);
        let d = 2.0 * c * (rho - b - a);
        let om = (x * x - d * d).sqrt();
        let f = if t > 0.0 { 1.0 / (om / (2.0 * t)).tanh() } else { 1.0 };
        // x/ω - 1 written as d²/(ω(x + ω)) so the large-k tail keeps its digits
        (f * d / om, f * d * d / (om * (x + om)) + (f - 1.0))
    };
    let s = (c * rho).sqrt();
    let a_new = halfline_de(|k| parts(k).0, s) / (2.0 * PI);
    let b_new = halfline_de(|k| parts(k).1, s) / (2.0 * PI);
    let c_new = halfline_de(|k| k * k * parts(k).1, s) / (2.0 * PI);
    (a_new, b_new, c_new)
}

#[test]
fn gap_equations_hold_under_independent_integration() {
    for &(g, t) in &[(0.1, 0.0), (1.0, 0.0), (10.0, 0.0), (1.0, 0.3)] {
        let p = CouplingPoint::from_gamma(1.0, g, t).unwrap();
        let s = solve_condensed(&p, &GaussianConfig::default()).unwrap();
        let (a, b, c) = moments_oracle(&p, s.a(), s.b());
        assert!((a - s.a()).abs() < 1e-10, "gamma {g}, T {t}: A {} vs {a}", s.a());
        assert!((b - s.b()).abs() < 1e-10, "gamma {g}, T {t}: B {} vs {b}", s.b());
        assert!((c - s.c_kinetic()).abs() < 1e-9 * c.max(1.0), "C {} vs {c}", s.c_kinetic());
    }
}

#[test]
fn energy_stable_under_grid_doubling() {
    for &g in &[0.05, 1.0, 20.0] {
        let p = CouplingPoint::from_gamma(1.0, g, 0.0).unwrap();
        let coarse = solve_condensed(&p, &GaussianConfig::default()).unwrap();
        let fine = solve_condensed(&p, &GaussianConfig { nodes: 256, ..Default::default() }).unwrap();
        assert!((coarse.energy_per_particle - fine.energy_per_particle).abs() < 1e-8);
    }
}

#[test]
fn moments_converge_without_cutoff() {
    let p = CouplingPoint::from_gamma(1.0, 1.0, 0.0).unwrap();
    let at = |k_max: f64| solve_condensed(&p, &GaussianConfig { k_max, ..Default::default() }).unwrap();
    let (s1, s2, s_inf) = (at(1e9), at(2e9), at(f64::INFINITY));
    for (x, y) in [(&s1, &s2), (&s2, &s_inf)] {
        assert!((x.a() - y.a()).abs() < 1e-8);
        assert!((x.b() - y.b()).abs() < 1e-8);
        assert!((x.c_kinetic() - y.c_kinetic()).abs() < 1e-8);
    }
}

#[test]
fn depletion_grows_with_temperature() {
    let cfg = GaussianConfig::default();
    let b: Vec<f64> = [0.0, 0.5, 1.0]
        .iter()
        .map(|&t| solve_condensed(&CouplingPoint::from_gamma(1.0, 1.0, t).unwrap(), &cfg).unwrap().b())
        .collect();
    assert!(b[0] < b[1] && b[1] < b[2]);
}

/// `(1/2π) ∫ dk / (exp((k² + s)/T) - 1)` as the series `√(T/4π) Σ e^{-js/T}/√j`.
fn bose_series(s: f64, t: f64) -> f64 {
    let mut sum = 0.0;
    for j in 1..2_000_000u32 {
        let term = (-(j as f64) * s / t).exp() / (j as f64).sqrt();
        sum += term;
        if term < 1e-18 {
            break;
        }
    }
    (t / (4.0 * PI)).sqrt() * sum
}

#[test]
fn noncondensed_density_matches_series() {
    for &t in &[0.5, 0.2, 0.1] {
        let p = CouplingPoint::new(1.0, 1.0, t).unwrap();
        let sol = solve_noncondensed(&p, &GaussianConfig::default()).unwrap();
        let s = 4.0 - sol.mu;
        assert!(s > 0.0);
        let n = bose_series(s, t);
        assert!((n - 1.0).abs() < 1e-9, "T {t}: {n}");
    }
}

#[test]
fn ideal_gas_chemical_potential() {
    let p = CouplingPoint::new(0.2, 0.0, 1.0).unwrap();
    let sol = solve_noncondensed(&p, &GaussianConfig::default()).unwrap();
    assert!((bose_series(-sol.mu, 1.0) - 0.2).abs() < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn condensed_invariants(g in 0.05f64..20.0, rho in 0.5f64..2.0) {
        let p = CouplingPoint::from_gamma(rho, g, 0.0).unwrap();
        let s = solve_condensed(&p, &GaussianConfig::default()).unwrap();
        let c = p.c();
        prop_assert!(s.a() > 0.0 && s.b() >= 0.0 && s.b() < rho);
        prop_assert!(s.condensate_density > 0.0 && s.condensate_density <= rho);
        prop_assert!(s.mu < 4.0 * c * rho);
        prop_assert!(s.residual <= 1e-10);
        let gap = gaussian_spectrum(&p, s.a(), s.b(), &[0.0]).unwrap()[0].energy;
        let want2 = 16.0 * c * c * (rho - s.b()) * s.a();
        prop_assert!((gap * gap - want2).abs() <= 1e-12 * want2);
    }

    #[test]
    fn gaussian_energy_bounds_exact(g in 0.05f64..20.0) {
        let p = CouplingPoint::from_gamma(1.0, g, 0.0).unwrap();
        let e_g = solve_condensed(&p, &GaussianConfig::default()).unwrap().e_dimensionless();
        prop_assert!(e_g >= ground_energy(g).unwrap() - 1e-6);
    }

    #[test]
    fn spectrum_is_gapped_and_free_at_large_k(g in 0.05f64..20.0, k in 0.0f64..10.0) {
        let p = CouplingPoint::from_gamma(1.0, g, 0.0).unwrap();
        let s = solve_condensed(&p, &GaussianConfig::default()).unwrap();
        let far = 1e3 * g.sqrt();
        let e = gaussian_spectrum(&p, s.a(), s.b(), &[k, far]).unwrap();
        prop_assert!(e[0].energy >= s.gap() * (1.0 - 1e-12));
        prop_assert!((e[1].energy / (far * far) - 1.0).abs() < 1e-3);
    }
}

#[test]
fn condensate_saturates_at_weak_coupling() {
    let cfg = GaussianConfig::default();
    let f: Vec<f64> = [1e-2, 1e-3, 1e-4]
        .iter()
        .map(|&g| solve_condensed(&CouplingPoint::from_gamma(1.0, g, 0.0).unwrap(), &cfg).unwrap().condensate_density)
        .collect();
    assert!(f[0] < f[1] && f[1] < f[2] && f[2] > 0.99);
}

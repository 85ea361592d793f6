use std::f64::consts::PI;

use bosegas_core::bogoliubov::{
    angle_integrand, bogoliubov_dispersion, combined_integral, combined_integrand, perturbative,
    truncated_functional_check,
};
use bosegas_core::numerics::Interval;
use bosegas_core::thermo::thermo_from_energy;
use proptest::prelude::*;

#[test]
fn combined_integral_matches_independent_quadrature() {
    let (c, rho) = (1.3, 0.7);
    let f = |t: f64| {
        if t >= 1.0 {
            return 0.0;
        }
        let k = t / (1.0 - t);
        let k2 = k * k;
        let a = 4.0 * c * rho;
        let eps = (k2 * k2 + a * k2).sqrt();
        -0.5 * a * a * k2 / ((eps + k2) * (eps + k2)) / ((1.0 - t) * (1.0 - t))
    };
    let oracle = 2.0 * quadrature::double_exponential::integrate(f, 0.0, 1.0, 1e-15).integral;
    let ours = combined_integral(c, rho, 128).unwrap();
    assert!((ours / oracle - 1.0).abs() < 1e-10);
    assert!((oracle / (-16.0 / 3.0 * (c * rho).powf(1.5)) - 1.0).abs() < 1e-10);
}

#[test]
fn shared_pipeline_reproduces_closed_forms() {
    for &g in &[0.1, 0.5, 2.0] {
        let v = thermo_from_energy(|x| Ok(perturbative(x)?.e), g, Interval::new(0.0, f64::INFINITY)).unwrap();
        let r = perturbative(g).unwrap();
        assert!((v.mu - r.mu).abs() < 1e-6 * r.mu);
        assert!((v.vs - r.vs_compressibility).abs() < 1e-6 * r.vs_compressibility);
    }
}

#[test]
fn velocities_merge_at_weak_coupling() {
    let ratio = |g: f64| {
        let r = perturbative(g).unwrap();
        r.vs_spectrum / r.vs_compressibility
    };
    assert!(ratio(1e-2) > ratio(1e-4) && ratio(1e-4) > ratio(1e-6));
    assert!(ratio(1e-6) - 1.0 < 1e-3);
}

#[test]
fn compressibility_velocity_ends_at_four_pi_squared() {
    let edge = 4.0 * PI * PI;
    assert!(perturbative(edge * (1.0 - 1e-9)).unwrap().vs_compressibility > 0.0);
    assert!(perturbative(edge * (1.0 + 1e-9)).unwrap().vs_compressibility.is_nan());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_invariants(g in 1e-6f64..39.4) {
        let r = perturbative(g).unwrap();
        prop_assert!(r.vs_spectrum >= r.vs_compressibility);
        prop_assert!(r.e < g);
        let breakdown = (0.75 * PI).powi(2);
        prop_assert_eq!(r.e < 0.0, g > breakdown);
    }

    #[test]
    fn integrand_identity(k in 1e-3f64..100.0, c in 0.01f64..10.0, rho in 0.1f64..3.0) {
        let a = combined_integrand(k, c, rho);
        let b = angle_integrand(k, c, rho);
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(c * rho), "{a} vs {b}");
    }

    #[test]
    fn dispersion_is_phononic_then_free(g in 0.01f64..20.0, rho in 0.2f64..3.0) {
        let p = 1e-7;
        prop_assert!((bogoliubov_dispersion(p, g, rho) / p / (2.0 * rho * g.sqrt()) - 1.0).abs() < 1e-9);
        let big = 1e4 * rho * g.sqrt();
        prop_assert!((bogoliubov_dispersion(big, g, rho) / (big * big) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn truncated_functional_tracks_closed_form(g in 0.05f64..10.0, rho in 0.5f64..2.0) {
        let e = truncated_functional_check(g, rho, 128).unwrap();
        let want = perturbative(g).unwrap().e * rho * rho;
        prop_assert!((e - want).abs() <= 1e-8 * want.abs().max(g * rho * rho));
    }
}

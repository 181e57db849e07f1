#![allow(clippy::excessive_precision)]

use orthobound_core::quadrature::{integrate, QuadratureOptions};
use orthobound_core::specfun::*;
use orthobound_core::Dimension;
use proptest::prelude::*;

fn dim(n: u32) -> Dimension {
    Dimension::new(n).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn l_fn_examples() {
    assert!((l_fn(0, -1.0).unwrap() - std::f64::consts::LN_2).abs() < 1e-15);
    let direct = 0.6f64.ln() + 0.4 + 0.08 + 0.064 / 3.0;
    assert!((l_fn(3, 0.4).unwrap() - direct).abs() < 1e-14);
    assert!((l_fn(3, 0.4).unwrap() + 0.009_492_290_432_657_365).abs() < 1e-15);
    let tail: f64 = -(3..200).map(|j| 0.25f64.powi(j) / j as f64).sum::<f64>();
    assert!(rel(l_fn(2, 0.25).unwrap(), tail) < 1e-14);
    assert!(l_fn(4, 1.0).is_err());
}

#[test]
fn gamma_examples() {
    assert_eq!(log_gamma(1.0).unwrap(), 0.0);
    assert!((log_gamma(0.5).unwrap() - 0.5 * std::f64::consts::PI.ln()).abs() < 1e-15);
    assert!(rel(log_gamma(10.0).unwrap(), 362_880f64.ln()) < 1e-14);
    assert!(log_gamma(0.0).is_err());
    assert!(log_gamma(-2.5).is_err());
}

#[test]
fn beta_examples() {
    assert!(rel(beta(1.0, 1.0).unwrap(), 1.0) < 1e-14);
    assert!(rel(beta(2.0, 3.0).unwrap(), 1.0 / 12.0) < 1e-13);
    assert!(rel(beta(0.5, 0.5).unwrap(), std::f64::consts::PI) < 1e-13);
    assert!(beta(0.0, 1.0).is_err());

    assert_eq!(incomplete_beta(0.0, 2.0, 3.0).unwrap(), 0.0);
    assert!(rel(incomplete_beta(1.0, 2.0, 3.0).unwrap(), 1.0 / 12.0) < 1e-13);
    assert!((incomplete_beta(0.5, 1.0, 1.0).unwrap() - 0.5).abs() < 1e-13);
    assert!(incomplete_beta(1.5, 1.0, 1.0).is_err());
}

#[test]
fn sphere_volumes() {
    assert_eq!(sphere_volume(0), 2.0);
    assert!(rel(sphere_volume(1), 2.0 * std::f64::consts::PI) < 1e-15);
    assert!(rel(sphere_volume(2), 12.566_370_614_359_172) < 1e-15);
    assert!(rel(sphere_volume(3), 2.0 * std::f64::consts::PI.powi(2)) < 1e-15);
}

#[test]
fn radial_integral_examples() {
    assert!(rel(cosh_power_integral(dim(2), 1.0).unwrap(), 1f64.sinh()) < 1e-15);
    for n in 2..8 {
        assert_eq!(cosh_power_integral(dim(n), 0.0).unwrap(), 0.0);
        assert_eq!(sinh_power_integral(dim(n), 0.0).unwrap(), 0.0);
    }
    let x = 0.8f64;
    let s3 = (x.sinh() * x.cosh() + x) / 2.0;
    assert!(rel(cosh_power_integral(dim(3), x).unwrap(), s3) < 1e-15);
    assert!((s3 - 0.993_892).abs() < 1e-6);

    assert!(rel(sinh_power_integral(dim(2), 1.0).unwrap(), 1f64.cosh() - 1.0) < 1e-15);
    let v = sinh_power_integral(dim(3), 1.0).unwrap();
    assert!(rel(v, (1f64.sinh() * 1f64.cosh() - 1.0) / 2.0) < 1e-14);
    assert!((v - 0.406_715_1).abs() < 1e-7);
}

#[test]
fn radial_integrals_match_quadrature() {
    let opts = QuadratureOptions::default().with_tolerance(1e-14);
    for n in 2..=10 {
        for &x in &[0.1, 0.5, 1.0, 2.0] {
            let p = (n - 1) as i32;
            let c = integrate(|t| t.cosh().powi(p), 0.0, x, &opts).unwrap().value;
            let s = integrate(|t| t.sinh().powi(p), 0.0, x, &opts).unwrap().value;
            let cc = cosh_power_integral(dim(n), x).unwrap();
            let ss = sinh_power_integral(dim(n), x).unwrap();
            assert!((cc - c).abs() <= 1e-11, "cosh n={n} x={x}: {cc} vs {c}");
            assert!((ss - s).abs() <= 1e-11, "sinh n={n} x={x}: {ss} vs {s}");
        }
    }
}

#[test]
fn legendre_duplication() {
    let ln_pi = std::f64::consts::PI.ln();
    let ln_2 = std::f64::consts::LN_2;
    for k in 1..=100 {
        let z = 0.5 * k as f64;
        let lhs = log_gamma(z).unwrap() + log_gamma(z + 0.5).unwrap()
            - (1.0 - 2.0 * z) * ln_2
            - 0.5 * ln_pi
            - log_gamma(2.0 * z).unwrap();
        assert!(lhs.abs() <= 1e-12, "z={z}: {lhs:e}");
    }
}

#[test]
fn gamma_sandwich() {
    for k in 0..=99 {
        let x = 1.0 + k as f64;
        let ln_core = (x + 0.5) * x.ln() - x;
        let ln_g = log_gamma(x + 1.0).unwrap();
        assert!(0.5 * (2.0 * std::f64::consts::PI).ln() + ln_core <= ln_g, "x={x}");
        assert!(ln_g <= 1.0 + ln_core, "x={x}");
    }
}

#[test]
fn beta_halving() {
    for k in 3..=50 {
        let a = 0.5 * k as f64;
        let half = incomplete_beta(0.5, a - 1.0, a).unwrap();
        assert!(half >= beta(a - 1.0, a).unwrap() / 2.0, "a={a}");
    }
}

#[test]
fn incomplete_beta_full_range() {
    for &(a, b) in &[(0.5, 0.5), (1.5, 2.0), (3.0, 3.5), (10.0, 10.5), (24.0, 25.0)] {
        let full = incomplete_beta(1.0, a, b).unwrap();
        assert!(rel(full, beta(a, b).unwrap()) <= 1e-13, "({a},{b})");
    }
}

proptest! {
    #[test]
    fn l_fn_completes_the_logarithm(k in 0u32..40, x in -0.999f64..0.999) {
        let sum = l_fn(k, x).unwrap() - p_poly(k, x);
        prop_assert!((sum - (1.0 - x).ln()).abs() <= 1e-13);
    }

    #[test]
    fn l_fn_branches_agree(k in 0u32..30, x in -0.5f64..0.5) {
        prop_assume!(x.abs() > 1e-3);
        let series = l_fn(k, x).unwrap();
        let direct = (1.0 - x).abs().ln() + p_poly(k, x);
        // cancellation in the log form grows like |x|^{-(k+1)}
        let scale = (1.0 - x).abs().ln().abs().max(p_poly(k, x).abs());
        prop_assert!((series - direct).abs() <= 1e-13 * scale.max(series.abs()) + 4e-16 * scale);
    }

    #[test]
    fn p_poly_matches_summation(k in 0u32..60, x in -10.0f64..10.0) {
        let direct: f64 = (1..=k).map(|j| x.powi(j as i32) / j as f64).sum();
        let bound: f64 = (1..=k).map(|j| x.abs().powi(j as i32) / j as f64).sum();
        prop_assert!((p_poly(k, x) - direct).abs() <= 1e-14 * bound.max(1e-300) * 4.0);
    }

    #[test]
    fn incomplete_beta_is_monotone(a in 0.5f64..20.0, b in 0.5f64..20.0, x in 0.0f64..0.99, dx in 0.001f64..0.01) {
        let lo = incomplete_beta(x, a, b).unwrap();
        let hi = incomplete_beta((x + dx).min(1.0), a, b).unwrap();
        prop_assert!(hi >= lo);
    }

    #[test]
    fn cosh_integral_increasing(n in 2u32..20, x in 0.0f64..5.0, dx in 1e-3f64..1.0) {
        let d = dim(n);
        prop_assert!(cosh_power_integral(d, x + dx).unwrap() > cosh_power_integral(d, x).unwrap());
    }
}

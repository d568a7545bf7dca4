use onebit_core::kernel::KernelSpec;
use onebit_core::noise::{solve_min_sigma, NoiseModel};
use proptest::prelude::*;
use std::sync::OnceLock;

fn k2() -> KernelSpec {
    static SPEC: OnceLock<KernelSpec> = OnceLock::new();
    *SPEC.get_or_init(|| KernelSpec::new(2.0).unwrap())
}

fn spec(i: usize) -> KernelSpec {
    static SPECS: OnceLock<Vec<KernelSpec>> = OnceLock::new();
    SPECS.get_or_init(|| {
        [1.5, 4.0]
            .iter()
            .map(|&l| KernelSpec::new(l).unwrap())
            .chain([k2()])
            .collect()
    })[i]
}

#[test]
fn cdf_at_one_sigma_matches_erf_oracle() {
    let k = k2();
    for sigma in [0.7, 1.3, 4.0] {
        let m = NoiseModel::with_total(&k, 0.0, sigma).unwrap();
        assert!((m.cdf(sigma) - 0.841_344_746_068_542_9).abs() < 1e-6);
        assert_eq!(m.cdf(0.0), 0.5);
        let peak = 1.0 / ((2.0 * std::f64::consts::PI).sqrt() * sigma);
        assert!((m.pdf(0.0) - peak).abs() < 1e-15);
        assert!((m.big_delta() - peak).abs() < 1e-15);
    }
}

#[test]
fn boundary_of_the_admissible_region() {
    let k = k2();
    let s0 = solve_min_sigma(&k).unwrap();
    let width = |s: f64| {
        let (lo, hi) = NoiseModel::with_total(&k, 0.0, s).unwrap().mu_window();
        hi - lo
    };
    assert!(width(s0).abs() < 1e-8);
    assert!(width(1.01 * s0) > 0.0);
    assert!(width(10.0 * s0) > 0.0);
    let m = NoiseModel::with_total(&k, 0.0, s0).unwrap();
    let c2 = k.c_phi().powi(2);
    let want = 1.0 / (1.0 - 1.0 / (2f64.sqrt() * c2));
    assert!((m.big_delta() / m.delta() - want).abs() < 1e-6);
}

#[test]
fn strong_ambient_noise_needs_no_dither() {
    let k = k2();
    let s0 = solve_min_sigma(&k).unwrap();
    let m = NoiseModel::build(&k, 3.0 * s0, 1.1).unwrap();
    assert_eq!(m.sigma_d(), 0.0);
    assert_eq!(m.sigma_tot(), 3.0 * s0);
    let m = NoiseModel::build(&k, 0.0, 1.1).unwrap();
    assert_eq!(m.sigma_d(), m.sigma_tot());
}

proptest! {
    #[test]
    fn built_models_are_consistent(
        i in 0..3usize,
        sigma_w in 0.0f64..5.0,
        mult in 1.01f64..4.0,
    ) {
        let k = spec(i);
        let m = NoiseModel::build(&k, sigma_w, mult).unwrap();
        prop_assert!((m.sigma_tot().powi(2) - m.sigma_w().powi(2) - m.sigma_d().powi(2)).abs() <= 1e-12 * m.sigma_tot().powi(2).max(1.0));
        prop_assert!(m.big_delta() > m.delta() && m.delta() > 0.0);
        let (lo, hi) = m.mu_window();
        prop_assert!(lo > 0.0);
        prop_assert!((lo - (1.0 - 1.0 / (2f64.sqrt() * k.c_phi().powi(2))) / m.delta()).abs() <= 1e-12 * lo);
        prop_assert!((hi - 1.0 / m.big_delta()).abs() <= 1e-12 * hi);
        prop_assert!(m.is_admissible());
        prop_assert!(lo < m.mu() && m.mu() < hi);
        prop_assert!(m.alpha() < 1.0 && m.beta() < 1.0);
        let d = (1.0 - m.mu() * m.delta()).abs();
        prop_assert!((m.alpha() - k.c_phi().powi(2) * d).abs() <= 1e-12);
        prop_assert!((m.beta() - 2.0 * k.c_phi().powi(4) * d * d).abs() <= 1e-12);
    }

    #[test]
    fn cdf_difference_quotients_are_sandwiched(x in -1.0f64..1.0, y in -1.0f64..1.0) {
        let k = k2();
        let m = NoiseModel::build(&k, 0.0, 1.1).unwrap();
        let (x, y) = (x * k.c_phi(), y * k.c_phi());
        prop_assume!((x - y).abs() > 1e-6);
        let q = (m.cdf(x) - m.cdf(y)) / (x - y);
        prop_assert!(m.delta() * (1.0 - 1e-9) <= q && q <= m.big_delta() * (1.0 + 1e-9));
    }

    #[test]
    fn inverse_cdf_round_trips(p in 0.001f64..0.999) {
        let m = NoiseModel::build(&k2(), 0.0, 1.1).unwrap();
        prop_assert!((m.cdf(m.inverse_cdf(p)) - p).abs() < 1e-9);
    }
}

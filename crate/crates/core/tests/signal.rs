use std::f64::consts::PI;

use onebit_core::kernel::{Grid, KernelSpec};
use onebit_core::signal::{BandlimitedSignal, BoundedBlSignal};
use proptest::prelude::*;
use std::sync::OnceLock;

fn k2() -> KernelSpec {
    static SPEC: OnceLock<KernelSpec> = OnceLock::new();
    *SPEC.get_or_init(|| KernelSpec::new(2.0).unwrap())
}

#[test]
fn frame_expansion_reproduces_the_signal() {
    let k = k2();
    let sig = BandlimitedSignal::synth_random(k, 64, 0.9, 5).unwrap();
    for n in [1, 2, 4, 8] {
        assert!(sig.frame_expand_check(n).unwrap() <= 1e-9, "N = {n}");
    }
    let zero = BandlimitedSignal::zero(k, 64).unwrap();
    for n in [1, 4, 8] {
        assert_eq!(zero.frame_expand_check(n).unwrap(), 0.0);
    }
}

#[test]
fn derivative_is_bounded_by_two_pi_squared() {
    let k = k2();
    for seed in [1, 2, 3] {
        let sig = BandlimitedSignal::synth_random(k, 64, 1.0, seed).unwrap();
        let g = sig.window_grid(64).unwrap();
        let h = g.step();
        let slope = g
            .values()
            .windows(2)
            .fold(0.0f64, |m, w| m.max((w[1] - w[0]).abs() / h));
        assert!(slope <= 2.0 * PI * PI, "seed {seed}: slope {slope}");
    }
}

#[test]
fn full_amplitude_signal_stays_in_range() {
    let k = k2();
    for seed in 0..5 {
        let sig = BandlimitedSignal::synth_random(k, 64, 1.0, seed).unwrap();
        let g = sig.window_grid(32).unwrap();
        assert!(g.sup_norm() <= 1.0 + 1e-9);
        assert!(sig.coeffs().iter().all(|c| c.abs() <= 1.0));
    }
}

#[test]
fn other_lambdas_reproduce_too() {
    for lambda in [1.5, 4.0] {
        let k = KernelSpec::new(lambda).unwrap();
        let sig = BandlimitedSignal::synth_random(k, 32, 0.9, 9).unwrap();
        let (dev, _) = sig.reproduction_error(64).unwrap();
        assert!(dev <= 1e-4, "lambda {lambda}: {dev}");
        assert!(sig.frame_expand_check(4).unwrap() <= 1e-9);
    }
}

#[test]
fn clipped_convolutions_reproduce_under_psi() {
    let k = k2();
    let r = Grid::from_fn(0.0, 1.0 / 16.0, 2048, |t| {
        3.0 * (0.7 * t).sin() + (2.3 * t).cos()
    })
    .unwrap();
    let m = BoundedBlSignal::from_clipped(k, &r).unwrap();
    assert!(m.grid().sup_norm() <= k.c_phi());
    // Far from the edges the convolution sees the full kernel.
    assert!(m.reproduction_error(40.0) <= 1e-3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn synthesized_signals_are_members(seed in any::<u64>(), amp in 0.1f64..1.0) {
        let sig = BandlimitedSignal::synth_random(k2(), 32, amp, seed).unwrap();
        let (dev, _) = sig.reproduction_error(64).unwrap();
        prop_assert!(dev <= 1e-4);
        prop_assert!(sig.sup_norm() <= amp + 1e-9);
    }

    #[test]
    fn json_replays_the_same_signal(seed in any::<u64>()) {
        let sig = BandlimitedSignal::synth_random(k2(), 16, 0.5, seed).unwrap();
        let back = BandlimitedSignal::from_json(&sig.to_json().unwrap()).unwrap();
        prop_assert_eq!(back.coeffs(), sig.coeffs());
        prop_assert_eq!(back.window(), sig.window());
        prop_assert_eq!(back.seed(), Some(seed));
    }
}

fn lipschitz_signals() -> &'static [BandlimitedSignal] {
    static SIGS: OnceLock<Vec<BandlimitedSignal>> = OnceLock::new();
    SIGS.get_or_init(|| {
        (0..8)
            .map(|seed| BandlimitedSignal::synth_random(k2(), 32, 1.0, seed).unwrap())
            .collect()
    })
}

proptest! {
    #[test]
    fn evaluation_is_lipschitz(i in 0usize..8, u in 0.0f64..1.0, d in -0.05f64..0.05) {
        let sig = &lipschitz_signals()[i];
        let [lo, hi] = sig.window();
        let t = lo + 0.05 + u * (hi - lo - 0.1);
        let gap = (sig.eval(t).unwrap() - sig.eval(t + d).unwrap()).abs();
        prop_assert!(gap <= 2.0 * PI * PI * d.abs() + 2e-12);
    }
}

use onebit_core::kernel::KernelSpec;
use onebit_core::noise::NoiseModel;
use onebit_core::sampling::{sample_constant_onebit, sample_onebit, sample_real, Sampler};
use onebit_core::signal::BandlimitedSignal;
use std::sync::OnceLock;

use statrs::distribution::{ChiSquared, ContinuousCDF};

fn k2() -> KernelSpec {
    static SPEC: OnceLock<KernelSpec> = OnceLock::new();
    *SPEC.get_or_init(|| KernelSpec::new(2.0).unwrap())
}

/// Noise residuals `y - g` from two large draws, about 1.2e6 values.
fn residuals(sigma_w: f64) -> Vec<f64> {
    let k = k2();
    let sig = BandlimitedSignal::synth_random(k, 64, 0.9, 11).unwrap();
    let model = NoiseModel::build(&k, sigma_w, 1.1).unwrap();
    let sampler = Sampler::new(&sig, 4096).unwrap();
    let mut out = Vec::new();
    for seed in [1, 2] {
        let rec = sampler.draw(&model, seed, true, false).unwrap();
        out.extend(
            rec.reals()
                .unwrap()
                .iter()
                .zip(sampler.clean())
                .map(|(y, g)| y - g),
        );
    }
    out
}

#[test]
fn ambient_noise_has_zero_mean_and_no_lag_one_correlation() {
    let sigma_w = 0.8;
    let r = residuals(sigma_w);
    assert!(r.len() >= 1_000_000);
    let mean = r.iter().sum::<f64>() / r.len() as f64;
    assert!(mean.abs() <= 4.0 * sigma_w / 1e3, "mean {mean}");
    let var = r.iter().map(|x| x * x).sum::<f64>() / r.len() as f64;
    assert!((var / (sigma_w * sigma_w) - 1.0).abs() < 0.01);

    let head = &r[..100_000];
    let m = head.iter().sum::<f64>() / head.len() as f64;
    let num: f64 = head.windows(2).map(|w| (w[0] - m) * (w[1] - m)).sum();
    let den: f64 = head.iter().map(|x| (x - m).powi(2)).sum();
    assert!(
        (num / den).abs() <= 0.02,
        "lag-1 autocorrelation {}",
        num / den
    );
}

#[test]
fn zero_signal_bits_are_fair_and_patternless() {
    let k = k2();
    let sig = BandlimitedSignal::zero(k, 64).unwrap();
    let model = NoiseModel::build(&k, 0.0, 1.1).unwrap();
    let rec = sample_onebit(&sig, &model, 4096, 5).unwrap();
    let bits = rec.bits().unwrap();
    let mean = bits.iter().map(|&b| f64::from(b)).sum::<f64>() / bits.len() as f64;
    assert!((mean - 0.5).abs() < 0.002, "mean {mean}");

    let mut counts = [0u64; 256];
    let chunks = bits.chunks_exact(8);
    let n = chunks.len() as f64;
    for c in chunks {
        let byte = c.iter().fold(0usize, |acc, &b| (acc << 1) | usize::from(b));
        counts[byte] += 1;
    }
    let expected = n / 256.0;
    let chi2: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    let p = 1.0 - ChiSquared::new(255.0).unwrap().cdf(chi2);
    assert!(p > 0.001, "chi-square {chi2}, p {p}");
}

#[test]
fn constant_level_bits_average_to_the_cdf() {
    let model = NoiseModel::build(&k2(), 0.0, 1.1).unwrap();
    let count = 400_000;
    for c in [-0.6, 0.0, 0.4] {
        let bits = sample_constant_onebit(c, &model, count, 17).unwrap();
        let p = model.cdf(c);
        let mean = bits.iter().map(|&b| f64::from(b)).sum::<f64>() / count as f64;
        let se = (p * (1.0 - p) / count as f64).sqrt();
        assert!((mean - p).abs() < 4.0 * se, "c {c}: {mean} vs {p}");
    }
}

#[test]
fn bit_fluctuations_have_variance_at_most_a_quarter() {
    let k = k2();
    let sig = BandlimitedSignal::synth_random(k, 64, 0.9, 12).unwrap();
    let model = NoiseModel::build(&k, 0.3, 1.1).unwrap();
    let sampler = Sampler::new(&sig, 64).unwrap();
    let rec = sampler.draw(&model, 3, false, true).unwrap();
    let resid: Vec<f64> = rec
        .bits()
        .unwrap()
        .iter()
        .zip(sampler.clean())
        .map(|(&b, &g)| f64::from(b) - model.cdf(g))
        .collect();
    let n = resid.len() as f64;
    let mean = resid.iter().sum::<f64>() / n;
    let var = resid.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    assert!(var <= 0.25, "variance {var}");
    assert!(mean.abs() < 4.0 * (0.25 / n).sqrt());
}

#[test]
fn streams_are_reproducible_and_tau_is_consistent() {
    let k = k2();
    let sig = BandlimitedSignal::synth_random(k, 32, 0.9, 4).unwrap();
    let model = NoiseModel::build(&k, 0.5, 1.1).unwrap();
    for n in [1, 3, 16] {
        let a = sample_real(&sig, &model, n, 8).unwrap();
        let b = sample_real(&sig, &model, n, 8).unwrap();
        assert_eq!(a, b);
        assert!((a.tau * k.lambda() * n as f64 - 1.0).abs() < 1e-12);
    }
}

#[test]
fn real_and_onebit_paths_share_the_ambient_draw() {
    let k = k2();
    let sig = BandlimitedSignal::synth_random(k, 32, 0.9, 4).unwrap();
    // No dither: sigma_w alone exceeds the floor, so bits are signs of the reals.
    let model = NoiseModel::build(&k, 5.0, 1.1).unwrap();
    assert_eq!(model.sigma_d(), 0.0);
    let both = Sampler::new(&sig, 8)
        .unwrap()
        .draw(&model, 21, true, true)
        .unwrap();
    for (y, b) in both.reals().unwrap().iter().zip(both.bits().unwrap()) {
        assert_eq!(*b, u8::from(*y >= 0.0));
    }
    let bits_only = sample_onebit(&sig, &model, 8, 21).unwrap();
    assert_eq!(bits_only.bits, both.bits);
}

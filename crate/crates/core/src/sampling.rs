//! Noisy observation streams at rate `lambda N`.
//!
//! Unquantized samples are `Y(n tau) = g(n tau) + W(n tau)`; one-bit samples
//! are `X(n tau) = 1(g(n tau) + W(n tau) + W_d(n tau) >= 0)`, with
//! `tau = 1 / (lambda N)`. Both streams for a given seed share the same
//! ambient noise draw `W`, and each index `n` owns a fixed slice of the
//! keystream, so any index range can be regenerated exactly.

use std::io::Write;

use crate::error::{invalid, Error, Result};
use crate::noise::{NoiseDistribution, NoiseModel};
use crate::rng::IndexedNormals;
use crate::signal::BandlimitedSignal;

/// One sampling session.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRecord {
    pub n_factor: usize,
    pub tau: f64,
    /// First sample index; sample `i` sits at `(n_lo + i) tau`.
    pub n_lo: i64,
    pub reals: Option<Vec<f64>>,
    pub bits: Option<Vec<u8>>,
    pub seed: u64,
}

impl SampleRecord {
    pub fn len(&self) -> usize {
        self.reals
            .as_ref()
            .map(Vec::len)
            .or_else(|| self.bits.as_ref().map(Vec::len))
            .unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn time(&self, i: usize) -> f64 {
        (self.n_lo + i as i64) as f64 * self.tau
    }

    pub fn reals(&self) -> Result<&[f64]> {
        self.reals
            .as_deref()
            .ok_or(Error::MissingStream("real-valued"))
    }

    pub fn bits(&self) -> Result<&[u8]> {
        self.bits.as_deref().ok_or(Error::MissingStream("one-bit"))
    }

    /// CSV dump: `n,t,y` for the real stream and/or `n,t,bit` for bits.
    /// When both streams are present the columns are `n,t,y,bit`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let header = match (&self.reals, &self.bits) {
            (Some(_), Some(_)) => "n,t,y,bit",
            (Some(_), None) => "n,t,y",
            (None, Some(_)) => "n,t,bit",
            (None, None) => "n,t",
        };
        writeln!(out, "{header}")?;
        for i in 0..self.len() {
            write!(out, "{},{}", self.n_lo + i as i64, self.time(i))?;
            if let Some(r) = &self.reals {
                write!(out, ",{}", r[i])?;
            }
            if let Some(b) = &self.bits {
                write!(out, ",{}", b[i])?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// Clean samples `g(n tau)` over the signal window, computed once and reused
/// for every noise realization.
#[derive(Debug, Clone)]
pub struct Sampler {
    n_factor: usize,
    tau: f64,
    n_lo: i64,
    clean: Vec<f64>,
}

impl Sampler {
    pub fn new(sig: &BandlimitedSignal, n_factor: usize) -> Result<Self> {
        if n_factor == 0 {
            return Err(invalid("N", "must be at least 1"));
        }
        let tau = 1.0 / (sig.spec().lambda() * n_factor as f64);
        let [lo, hi] = sig.window();
        // Tolerate rounding so window endpoints on the lattice are kept.
        let n_lo = (lo / tau - 1e-9).ceil() as i64;
        let n_hi = (hi / tau + 1e-9).floor() as i64;
        let clean = (n_lo..=n_hi)
            .map(|n| sig.eval_unchecked(n as f64 * tau))
            .collect();
        Ok(Self {
            n_factor,
            tau,
            n_lo,
            clean,
        })
    }

    pub fn n_factor(&self) -> usize {
        self.n_factor
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn n_lo(&self) -> i64 {
        self.n_lo
    }

    pub fn len(&self) -> usize {
        self.clean.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clean.is_empty()
    }

    pub fn clean(&self) -> &[f64] {
        &self.clean
    }

    /// Draws the requested streams for one realization.
    pub fn draw(
        &self,
        model: &NoiseModel,
        seed: u64,
        reals: bool,
        bits: bool,
    ) -> Result<SampleRecord> {
        if bits {
            model.require_admissible()?;
        }
        let dist_w = model.sigma_w();
        let dist_d = model.sigma_d();
        let mut normals = IndexedNormals::new(seed, self.n_lo.max(0) as u64);
        let mut y = reals.then(|| Vec::with_capacity(self.len()));
        let mut x = bits.then(|| Vec::with_capacity(self.len()));
        for &g in &self.clean {
            let (zw, zd) = normals.next_pair();
            let noisy = g + dist_w * zw;
            if let Some(y) = y.as_mut() {
                y.push(noisy);
            }
            if let Some(x) = x.as_mut() {
                x.push(u8::from(noisy + dist_d * zd >= 0.0));
            }
        }
        Ok(SampleRecord {
            n_factor: self.n_factor,
            tau: self.tau,
            n_lo: self.n_lo,
            reals: y,
            bits: x,
            seed,
        })
    }
}

/// Unquantized noisy samples; no dither on this path.
pub fn sample_real(
    sig: &BandlimitedSignal,
    model: &NoiseModel,
    n_factor: usize,
    seed: u64,
) -> Result<SampleRecord> {
    Sampler::new(sig, n_factor)?.draw(model, seed, true, false)
}

/// Dithered one-bit samples at the model's total noise level.
pub fn sample_onebit(
    sig: &BandlimitedSignal,
    model: &NoiseModel,
    n_factor: usize,
    seed: u64,
) -> Result<SampleRecord> {
    Sampler::new(sig, n_factor)?.draw(model, seed, false, true)
}

/// `count` dithered one-bit observations of the constant `c`.
pub fn sample_constant_onebit(
    c: f64,
    model: &NoiseModel,
    count: usize,
    seed: u64,
) -> Result<Vec<u8>> {
    model.require_admissible()?;
    let dist = model.distribution();
    let mut normals = IndexedNormals::new(seed, 0);
    Ok((0..count)
        .map(|_| {
            // Total noise is Gaussian at sigma_tot; one normal per sample.
            let (z, _) = normals.next_pair();
            u8::from(c + dist.transform_standard_normal(z) >= 0.0)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::KernelSpec;

    fn setup(sigma_w: f64) -> (BandlimitedSignal, NoiseModel) {
        let k = KernelSpec::new(2.0).unwrap();
        let sig = BandlimitedSignal::synth_random(k, 16, 0.9, 1).unwrap();
        let model = NoiseModel::build(&k, sigma_w, 1.1).unwrap();
        (sig, model)
    }

    #[test]
    fn tau_relation_and_coverage() {
        let (sig, model) = setup(0.5);
        let rec = sample_real(&sig, &model, 8, 3).unwrap();
        assert!((rec.tau * 2.0 * 8.0 - 1.0).abs() < 1e-12);
        let [lo, hi] = sig.window();
        assert!(rec.time(0) >= lo - 1e-12 && rec.time(0) < lo + rec.tau);
        assert!(rec.time(rec.len() - 1) <= hi + 1e-12);
        assert!(rec.bits().is_err());
    }

    #[test]
    fn noiseless_reals_are_exact() {
        let (sig, model) = setup(0.0);
        let rec = sample_real(&sig, &model, 4, 3).unwrap();
        for (i, y) in rec.reals().unwrap().iter().enumerate() {
            assert_eq!(*y, sig.eval(rec.time(i)).unwrap());
        }
    }

    #[test]
    fn same_seed_same_stream() {
        let (sig, model) = setup(0.3);
        let a = sample_onebit(&sig, &model, 4, 9).unwrap();
        let b = sample_onebit(&sig, &model, 4, 9).unwrap();
        let c = sample_onebit(&sig, &model, 4, 10).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.bits, c.bits);
        assert!(a.bits().unwrap().iter().all(|&b| b <= 1));
    }

    #[test]
    fn rejects_inadmissible_model() {
        let (sig, _) = setup(0.0);
        let k = *sig.spec();
        let tight = NoiseModel::with_total(&k, 0.0, 1.0).unwrap();
        assert!(!tight.is_admissible());
        assert!(matches!(
            sample_onebit(&sig, &tight, 4, 1),
            Err(Error::InadmissibleModel(_))
        ));
    }

    #[test]
    fn csv_layout() {
        let (sig, model) = setup(0.3);
        let rec = Sampler::new(&sig, 1)
            .unwrap()
            .draw(&model, 2, true, true)
            .unwrap();
        let mut buf = Vec::new();
        rec.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("n,t,y,bit"));
        assert_eq!(lines.count(), rec.len());
    }
}

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::kernel::Grid;
use crate::noise::NoiseModel;
use crate::par;
use crate::reconstruct::{
    centered_bits, solve_with, ContractionMap, LatticeKernel, Method, SolveOptions,
};
use crate::rng::derive_seed;
use crate::sampling::Sampler;
use crate::signal::BandlimitedSignal;

/// Largest tolerated fraction of non-converged one-bit trials.
pub const MAX_FAILURE_FRACTION: f64 = 0.01;

/// Knobs shared by every measurement in a sweep.
#[derive(Debug, Clone)]
pub struct MeasureOptions {
    /// Reconstruction grid points per Nyquist interval.
    pub grid_density: usize,
    /// Fixed-point tolerance; `0.01 / sqrt(N)` when absent.
    pub tol: Option<f64>,
    pub max_iters: Option<usize>,
    pub warm_start: bool,
    /// Spread trials over the rayon pool (ignored without the `parallel` feature).
    pub parallel: bool,
}

impl Default for MeasureOptions {
    fn default() -> Self {
        Self {
            grid_density: 4,
            tol: None,
            max_iters: None,
            warm_start: false,
            parallel: true,
        }
    }
}

/// Distortion estimate for one method at one N.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Measurement {
    #[serde(rename = "N")]
    pub n_factor: usize,
    pub method: Method,
    /// Max over the active grid of the trial-mean squared error.
    pub d_hat: f64,
    /// Jackknife standard error of `d_hat`.
    pub stderr: f64,
    pub mean_iters: f64,
    pub failed_trials: usize,
    pub trials: usize,
}

struct TrialOut {
    frame: Option<Vec<f64>>,
    onebit: Option<std::result::Result<(Vec<f64>, usize), Error>>,
}

/// Runs `trials` independent noise realizations at oversampling `n_factor`
/// and measures each requested method on the same realizations.
pub fn measure(
    sig: &BandlimitedSignal,
    model: &NoiseModel,
    n_factor: usize,
    methods: &[Method],
    trials: usize,
    seed: u64,
    opts: &MeasureOptions,
) -> Result<Vec<Measurement>> {
    if trials < 30 {
        return Err(invalid(
            "M",
            format!("need at least 30 trials, got {trials}"),
        ));
    }
    if methods.is_empty() {
        return Err(invalid("methods", "nothing to measure"));
    }
    let want_frame = methods.contains(&Method::Frame);
    let want_onebit = methods.contains(&Method::OneBit);
    let spec = sig.spec();
    let sampler = Sampler::new(sig, n_factor)?;
    let truth = sig.window_grid(opts.grid_density)?;
    let [lo, hi] = sig.active();
    let active: Vec<usize> = truth
        .times()
        .enumerate()
        .filter(|(_, t)| *t >= lo - 1e-9 && *t <= hi + 1e-9)
        .map(|(i, _)| i)
        .collect();
    let lattice = LatticeKernel::new(spec, &truth, sampler.tau(), sampler.n_lo(), sampler.len())?;
    let map = if want_onebit {
        Some(ContractionMap::new(model, spec, truth.step(), truth.len())?)
    } else {
        None
    };
    let solve_opts = SolveOptions {
        tol: opts.tol.unwrap_or(0.01 / (n_factor as f64).sqrt()),
        max_iters: opts.max_iters,
        init: None,
    };
    let need_reals = want_frame || (want_onebit && opts.warm_start);
    let sq_err = |est: &[f64]| -> Vec<f64> {
        active
            .iter()
            .map(|&i| {
                let e = est[i] - truth.values()[i];
                e * e
            })
            .collect()
    };

    let run = |m: usize| -> Result<TrialOut> {
        let rec = sampler.draw(
            model,
            derive_seed(seed, n_factor as u64, m as u64),
            need_reals,
            want_onebit,
        )?;
        let (frame_est, h) = match (&rec.reals, &rec.bits) {
            (Some(y), Some(x)) => {
                let (f, h) = lattice.apply_pair(y, &centered_bits(x));
                (Some(f), Some(h))
            }
            (Some(y), None) => (Some(lattice.apply(y)), None),
            (None, Some(x)) => (None, Some(lattice.apply(&centered_bits(x)))),
            (None, None) => (None, None),
        };
        let onebit = match (h, &map) {
            (Some(h), Some(map)) => {
                let mut o = solve_opts.clone();
                if opts.warm_start {
                    o.init = frame_est.clone();
                }
                let h = truth.with_values(h)?;
                Some(solve_with(map, &h, &o).map(|r| (sq_err(r.grid.values()), r.iterations)))
            }
            _ => None,
        };
        Ok(TrialOut {
            frame: if want_frame {
                frame_est.map(|f| sq_err(&f))
            } else {
                None
            },
            onebit,
        })
    };

    let outs: Vec<TrialOut> = par::map_indexed(trials, opts.parallel, run)
        .into_iter()
        .collect::<Result<_>>()?;

    let mut result = Vec::new();
    for &method in methods {
        let measurement = match method {
            Method::Frame => {
                let errs: Vec<&[f64]> = outs.iter().filter_map(|o| o.frame.as_deref()).collect();
                let (d_hat, stderr) = summarize(&errs);
                Measurement {
                    n_factor,
                    method,
                    d_hat,
                    stderr,
                    mean_iters: 0.0,
                    failed_trials: 0,
                    trials,
                }
            }
            Method::OneBit => {
                let mut errs = Vec::new();
                let mut iters = 0usize;
                let mut failed = 0usize;
                for o in &outs {
                    match &o.onebit {
                        Some(Ok((e, k))) => {
                            errs.push(e.as_slice());
                            iters += k;
                        }
                        _ => failed += 1,
                    }
                }
                if failed as f64 > MAX_FAILURE_FRACTION * trials as f64 {
                    return Err(Error::TooManyFailures { failed, trials });
                }
                let (d_hat, stderr) = summarize(&errs);
                Measurement {
                    n_factor,
                    method,
                    d_hat,
                    stderr,
                    mean_iters: iters as f64 / errs.len() as f64,
                    failed_trials: failed,
                    trials,
                }
            }
        };
        result.push(measurement);
    }
    Ok(result)
}

/// Single-method measurement with default options.
pub fn measure_distortion(
    sig: &BandlimitedSignal,
    model: &NoiseModel,
    n_factor: usize,
    method: Method,
    trials: usize,
    seed: u64,
) -> Result<Measurement> {
    let mut out = measure(
        sig,
        model,
        n_factor,
        &[method],
        trials,
        seed,
        &MeasureOptions::default(),
    )?;
    Ok(out.remove(0))
}

/// `max_i mean_m e[m][i]` and its delete-one jackknife standard error.
pub(crate) fn summarize(errs: &[&[f64]]) -> (f64, f64) {
    let m = errs.len();
    if m == 0 {
        return (f64::NAN, f64::NAN);
    }
    let width = errs[0].len();
    let mut sums = vec![0.0; width];
    for e in errs {
        for (s, v) in sums.iter_mut().zip(e.iter()) {
            *s += v;
        }
    }
    let d_hat = sums
        .iter()
        .fold(f64::NEG_INFINITY, |a, &s| a.max(s / m as f64));
    if m < 2 {
        return (d_hat, f64::NAN);
    }
    let loo: Vec<f64> = errs
        .iter()
        .map(|e| {
            sums.iter()
                .zip(e.iter())
                .fold(f64::NEG_INFINITY, |a, (s, v)| {
                    a.max((s - v) / (m - 1) as f64)
                })
        })
        .collect();
    let mean = loo.iter().sum::<f64>() / m as f64;
    let var = loo.iter().map(|x| (x - mean).powi(2)).sum::<f64>() * (m - 1) as f64 / m as f64;
    (d_hat, var.sqrt())
}

/// Reconstruction grid and active-region truth used by [`measure`], exposed
/// for diagnostics.
pub fn truth_grid(sig: &BandlimitedSignal, density: usize) -> Result<Grid> {
    sig.window_grid(density)
}

//! Monte Carlo distortion measurement and N-sweeps.
//!
//! Distortion is the sup over time of the pointwise mean-squared error,
//! approximated by the maximum over the active part of the reconstruction
//! grid. A sweep measures it for every N in the configuration, fits the
//! log-log slope per method and checks the fitted exponents against the
//! configured band.

mod config;
mod fit;
mod measure;

use std::io::Write;
use std::path::Path;

use serde::Serialize;

pub use config::ExperimentConfig;
pub use fit::{fit_loglog_slope, LogLogFit};
pub use measure::{
    measure, measure_distortion, truth_grid, MeasureOptions, Measurement, MAX_FAILURE_FRACTION,
};

use crate::error::Result;
use crate::kernel::KernelSpec;
use crate::noise::{ModelEcho, NoiseModel};
use crate::reconstruct::Method;
use crate::signal::BandlimitedSignal;

/// One CSV row: a measurement, or the failure that replaced it.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    #[serde(rename = "N")]
    pub n_factor: usize,
    pub method: Method,
    #[serde(rename = "D_hat")]
    pub d_hat: Option<f64>,
    pub stderr: Option<f64>,
    pub mean_iters: Option<f64>,
    pub failed_trials: usize,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MethodFit {
    pub method: Method,
    pub fit: Option<LogLogFit>,
    /// Why the fit was not attempted, if it was not.
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Enforced checks decide the `--check` exit status; the rest are reported only.
    pub enforced: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SignalEcho {
    pub seed: Option<u64>,
    #[serde(rename = "K")]
    pub k_atoms: usize,
    pub window: [f64; 2],
    pub active: [f64; 2],
    pub sup_norm: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub config: ExperimentConfig,
    pub kernel: KernelSpec,
    pub noise: ModelEcho,
    pub signal: SignalEcho,
    pub rows: Vec<SweepRow>,
    pub fits: Vec<MethodFit>,
    /// `D_onebit / D_frame` per N, when both are available.
    pub ratios: Vec<(usize, f64)>,
    pub ratio_spread: Option<f64>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl SweepResult {
    /// Whether every enforced check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().filter(|c| c.enforced).all(|c| c.passed)
    }

    /// Whether any measurement failed outright.
    pub fn has_failures(&self) -> bool {
        self.rows.iter().any(|r| r.error.is_some())
    }

    pub fn fit(&self, method: Method) -> Option<&LogLogFit> {
        self.fits
            .iter()
            .find(|f| f.method == method)
            .and_then(|f| f.fit.as_ref())
    }

    pub fn row(&self, n_factor: usize, method: Method) -> Option<&SweepRow> {
        self.rows
            .iter()
            .find(|r| r.n_factor == n_factor && r.method == method)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "N,method,D_hat,stderr,mean_iters")?;
        let cell = |v: Option<f64>| v.map_or_else(|| "nan".to_string(), |x| format!("{x:e}"));
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{}",
                r.n_factor,
                r.method,
                cell(r.d_hat),
                cell(r.stderr),
                cell(r.mean_iters)
            )?;
        }
        Ok(())
    }

    /// Writes `sweep.csv` and `sweep.json` into `dir`, creating it if needed.
    pub fn persist(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        let mut csv = Vec::new();
        self.write_csv(&mut csv)?;
        std::fs::write(dir.join("sweep.csv"), csv)?;
        std::fs::write(dir.join("sweep.json"), self.to_json()?)?;
        Ok(())
    }
}

/// Runs the sweep described by `config` and persists it when
/// `config.output` is set.
pub fn sweep(config: &ExperimentConfig) -> Result<SweepResult> {
    sweep_with_progress(config, |_| {})
}

/// [`sweep`] with a callback invoked after each N completes.
pub fn sweep_with_progress<F: FnMut(&[SweepRow])>(
    config: &ExperimentConfig,
    mut progress: F,
) -> Result<SweepResult> {
    config.validate()?;
    let kernel = KernelSpec::new(config.lambda)?;
    let sig =
        BandlimitedSignal::synth_random(kernel, config.k_atoms, config.amplitude, config.seed)?;
    let model = NoiseModel::build(&kernel, config.sigma_w, config.sigma_floor_mult)?;
    let opts = MeasureOptions {
        grid_density: config.eval_grid_density,
        tol: config.tol,
        max_iters: config.max_iters,
        warm_start: config.warm_start,
        parallel: true,
    };

    let mut rows = Vec::new();
    for &n in &config.n_list {
        let start = rows.len();
        match measure(
            &sig,
            &model,
            n,
            &config.methods,
            config.trials,
            config.seed,
            &opts,
        ) {
            Ok(ms) => rows.extend(ms.into_iter().map(|m| SweepRow {
                n_factor: m.n_factor,
                method: m.method,
                d_hat: Some(m.d_hat),
                stderr: Some(m.stderr),
                mean_iters: Some(m.mean_iters),
                failed_trials: m.failed_trials,
                error: None,
            })),
            Err(e) => rows.extend(config.methods.iter().map(|&method| SweepRow {
                n_factor: n,
                method,
                d_hat: None,
                stderr: None,
                mean_iters: None,
                failed_trials: 0,
                error: Some(e.to_string()),
            })),
        }
        progress(&rows[start..]);
    }

    let result = assemble(config, kernel, &sig, &model, rows)?;
    if let Some(dir) = &config.output {
        result.persist(dir)?;
    }
    Ok(result)
}

fn assemble(
    config: &ExperimentConfig,
    kernel: KernelSpec,
    sig: &BandlimitedSignal,
    model: &NoiseModel,
    rows: Vec<SweepRow>,
) -> Result<SweepResult> {
    let mut fits = Vec::new();
    let mut checks = Vec::new();
    let [band_lo, band_hi] = config.slope_band;
    for &method in &config.methods {
        let points: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.method == method)
            .filter_map(|r| r.d_hat.map(|d| (r.n_factor as f64, d)))
            .collect();
        let skipped = if method == Method::Frame && config.sigma_w == 0.0 {
            Some("noiseless frame estimator: distortion sits at the quadrature floor".to_string())
        } else if points.len() < 3 {
            Some(format!("only {} usable rows", points.len()))
        } else if points.len() < config.n_list.len() {
            Some("some measurements failed".to_string())
        } else {
            None
        };
        let fit = match skipped {
            Some(_) => None,
            None => Some(fit_loglog_slope(&points)?),
        };
        if let Some(f) = &fit {
            checks.push(Check {
                name: format!("{method} slope"),
                passed: f.slope >= band_lo && f.slope <= band_hi,
                enforced: true,
                detail: format!(
                    "slope {:.4} (95% CI [{:.4}, {:.4}]) vs band [{band_lo}, {band_hi}]",
                    f.slope, f.ci[0], f.ci[1]
                ),
            });
        } else if method == Method::OneBit {
            checks.push(Check {
                name: format!("{method} slope"),
                passed: false,
                enforced: true,
                detail: skipped.clone().unwrap_or_default(),
            });
        }
        fits.push(MethodFit {
            method,
            fit,
            skipped,
        });
    }

    let frame_fitted = fits
        .iter()
        .any(|f| f.method == Method::Frame && f.fit.is_some());
    let mut ratios = Vec::new();
    if frame_fitted && config.has(Method::OneBit) {
        for &n in &config.n_list {
            let get = |m: Method| {
                rows.iter()
                    .find(|r| r.n_factor == n && r.method == m)
                    .and_then(|r| r.d_hat)
            };
            if let (Some(f), Some(o)) = (get(Method::Frame), get(Method::OneBit)) {
                ratios.push((n, o / f));
            }
        }
    }
    let ratio_spread = if ratios.len() >= 2 {
        let max = ratios.iter().fold(f64::NEG_INFINITY, |m, r| m.max(r.1));
        let min = ratios.iter().fold(f64::INFINITY, |m, r| m.min(r.1));
        Some(max / min)
    } else {
        None
    };
    if let Some(spread) = ratio_spread {
        checks.push(Check {
            name: "ratio spread".to_string(),
            passed: spread <= config.ratio_spread_max,
            enforced: true,
            detail: format!(
                "max/min onebit/frame ratio {spread:.4} vs limit {}",
                config.ratio_spread_max
            ),
        });
        let worst = ratios.iter().fold(f64::INFINITY, |m, r| m.min(r.1));
        checks.push(Check {
            name: "onebit dominates frame".to_string(),
            passed: worst >= 1.0,
            enforced: false,
            detail: format!("smallest onebit/frame ratio {worst:.4}"),
        });
    }

    let notes = vec![
        "test signal, window sizes and noise levels are experimental choices of this harness"
            .to_string(),
        "distortion is the maximum over the active region of the reconstruction grid".to_string(),
    ];
    Ok(SweepResult {
        config: config.clone(),
        kernel,
        noise: model.echo(),
        signal: SignalEcho {
            seed: sig.seed(),
            k_atoms: config.k_atoms,
            window: sig.window(),
            active: sig.active(),
            sup_norm: sig.sup_norm(),
        },
        rows,
        fits,
        ratios,
        ratio_spread,
        checks,
        notes,
    })
}

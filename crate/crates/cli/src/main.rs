use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use onebit_core::harness::{self, ExperimentConfig, SweepRow};
use onebit_core::kernel::{GridConvolver, KernelSpec};
use onebit_core::noise::NoiseModel;
use onebit_core::reconstruct::{
    fixed_point_solve, frame_estimate, onebit_interpolate, sup_distance, SolveOptions,
};
use onebit_core::sampling::Sampler;
use onebit_core::signal::BandlimitedSignal;
use onebit_core::{par, Error};

#[derive(Parser)]
#[command(
    name = "onebit",
    version,
    about = "One-bit and unquantized bandlimited reconstruction experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the kernel constants for a given lambda as JSON.
    Constants {
        #[arg(long)]
        lambda: f64,
        /// Override the truncation radius used for the constants.
        #[arg(long)]
        truncation_radius: Option<f64>,
    },
    /// One frame-estimator run on a random signal.
    SimulateFrame(SimArgs),
    /// One one-bit run (interpolation plus fixed-point inversion).
    SimulateOnebit(SimArgs),
    /// Single fixed-point solve with per-iteration diagnostics as CSV.
    FixedPoint {
        #[command(flatten)]
        sim: SimArgs,
        /// Drive the iteration with the exact h = (F(g) - 1/2) * phi instead of H_N.
        #[arg(long)]
        exact: bool,
        /// CSV destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an N-sweep from a JSON config and write sweep.csv / sweep.json.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Output directory; overrides the config's `output`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit with status 2 when a slope or ratio check fails.
        #[arg(long)]
        check: bool,
        /// Worker threads for the trial pool.
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Args, Clone)]
struct SimArgs {
    #[arg(long, default_value_t = 2.0)]
    lambda: f64,
    /// Number of random atoms in the signal.
    #[arg(long = "K", default_value_t = 64)]
    k_atoms: usize,
    #[arg(long, default_value_t = 0.9)]
    amplitude: f64,
    #[arg(long, default_value_t = 0.0)]
    sigma_w: f64,
    #[arg(long, default_value_t = 1.1)]
    sigma_floor_mult: f64,
    /// Oversampling factor.
    #[arg(long = "N", default_value_t = 16)]
    n_factor: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Reconstruction grid points per Nyquist interval.
    #[arg(long, default_value_t = 4)]
    density: usize,
    /// Fixed-point tolerance (default 0.01 / sqrt(N), or 1e-8 with --exact).
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_iters: Option<usize>,
    /// Write the signal as JSON.
    #[arg(long)]
    signal_out: Option<PathBuf>,
    /// Write the raw samples as CSV.
    #[arg(long)]
    samples_out: Option<PathBuf>,
}

struct Setup {
    kernel: KernelSpec,
    sig: BandlimitedSignal,
    model: NoiseModel,
}

impl SimArgs {
    fn setup(&self) -> Result<Setup> {
        let kernel = KernelSpec::new(self.lambda)?;
        let sig = BandlimitedSignal::synth_random(kernel, self.k_atoms, self.amplitude, self.seed)?;
        let model = NoiseModel::build(&kernel, self.sigma_w, self.sigma_floor_mult)?;
        if let Some(path) = &self.signal_out {
            std::fs::write(path, sig.to_json()?)
                .with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(Setup { kernel, sig, model })
    }

    fn solve_options(&self, exact: bool) -> SolveOptions {
        let mut o = if exact {
            SolveOptions::exact()
        } else {
            SolveOptions::noisy(self.n_factor)
        };
        if let Some(t) = self.tol {
            o.tol = t;
        }
        o.max_iters = self.max_iters;
        o
    }
}

/// Sup error and mean squared error over the active region.
fn active_errors(sig: &BandlimitedSignal, truth: &onebit_core::Grid, est: &[f64]) -> (f64, f64) {
    let [lo, hi] = sig.active();
    let errs: Vec<f64> = truth
        .times()
        .zip(truth.values().iter().zip(est))
        .filter(|(t, _)| *t >= lo && *t <= hi)
        .map(|(_, (g, e))| e - g)
        .collect();
    let sup = errs.iter().fold(0.0f64, |m, e| m.max(e.abs()));
    let mse = errs.iter().map(|e| e * e).sum::<f64>() / errs.len() as f64;
    (sup, mse)
}

fn simulate(args: &SimArgs, onebit: bool) -> Result<()> {
    let s = args.setup()?;
    let truth = s.sig.window_grid(args.density)?;
    let sampler = Sampler::new(&s.sig, args.n_factor)?;
    let rec = sampler.draw(&s.model, args.seed, !onebit, onebit)?;
    if let Some(path) = &args.samples_out {
        rec.write_csv(BufWriter::new(File::create(path)?))?;
    }
    let summary = if onebit {
        let h = onebit_interpolate(&rec, &s.kernel, &truth)?;
        let r = fixed_point_solve(&h.grid, &s.model, &s.kernel, &args.solve_options(false))?;
        let (sup, mse) = active_errors(&s.sig, &truth, r.grid.values());
        json!({
            "method": "onebit",
            "N": args.n_factor,
            "samples": rec.len(),
            "sup_error": sup,
            "mean_squared_error": mse,
            "iterations": r.iterations,
            "residual_history": r.residual_history,
            "noise": s.model.echo(),
        })
    } else {
        let r = frame_estimate(&rec, &s.kernel, &truth)?;
        let (sup, mse) = active_errors(&s.sig, &truth, r.grid.values());
        json!({
            "method": "frame",
            "N": args.n_factor,
            "samples": rec.len(),
            "sup_error": sup,
            "mean_squared_error": mse,
            "noise": s.model.echo(),
        })
    };
    emit(&serde_json::to_string_pretty(&summary)?)?;
    Ok(())
}

fn fixed_point(args: &SimArgs, exact: bool, out: Option<&PathBuf>) -> Result<()> {
    let s = args.setup()?;
    let truth = s.sig.window_grid(args.density)?;
    let h = if exact {
        let l: Vec<f64> = truth
            .values()
            .iter()
            .map(|&g| s.model.cdf(g) - 0.5)
            .collect();
        truth.with_values(GridConvolver::phi(&s.kernel, truth.step(), truth.len()).apply(&l))?
    } else {
        let rec = Sampler::new(&s.sig, args.n_factor)?.draw(&s.model, args.seed, false, true)?;
        onebit_interpolate(&rec, &s.kernel, &truth)?.grid
    };
    let r = fixed_point_solve(&h, &s.model, &s.kernel, &args.solve_options(exact))?;
    let alpha = s.model.alpha();
    let first = r.residual_history[0];
    let mut w: Box<dyn Write> = match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    writeln!(w, "iter,residual_sup,predicted_bound")?;
    for (k, res) in r.residual_history.iter().enumerate() {
        let k = k + 1;
        let bound = alpha.powi(k as i32) * first / (1.0 - alpha);
        writeln!(w, "{k},{res:e},{bound:e}")?;
    }
    w.flush()?;
    eprintln!(
        "converged in {} iterations; alpha = {alpha:.4}; sup error vs g = {:.3e}",
        r.iterations,
        sup_distance(r.grid.values(), truth.values())
    );
    Ok(())
}

/// Writes a line to stdout; a closed pipe is not an error.
fn emit(text: &str) -> Result<()> {
    match writeln!(io::stdout().lock(), "{text}") {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn print_rows(rows: &[SweepRow]) {
    for r in rows {
        match (&r.d_hat, &r.error) {
            (Some(d), _) => eprintln!(
                "N={:<5} {:<7} D_hat={d:.4e} stderr={:.2e} iters={:.2}",
                r.n_factor,
                r.method.as_str(),
                r.stderr.unwrap_or(f64::NAN),
                r.mean_iters.unwrap_or(0.0)
            ),
            (None, Some(e)) => {
                eprintln!("N={:<5} {:<7} failed: {e}", r.n_factor, r.method.as_str())
            }
            _ => {}
        }
    }
}

fn run_sweep(
    config: &Path,
    out: Option<PathBuf>,
    check: bool,
    threads: Option<usize>,
) -> Result<ExitCode> {
    let mut cfg =
        ExperimentConfig::load(config).with_context(|| format!("loading {}", config.display()))?;
    if out.is_some() {
        cfg.output = out;
    }
    let result = match threads {
        Some(t) => par::with_threads(t, || harness::sweep_with_progress(&cfg, print_rows))??,
        None => harness::sweep_with_progress(&cfg, print_rows)?,
    };
    for f in &result.fits {
        match (&f.fit, &f.skipped) {
            (Some(fit), _) => eprintln!(
                "{} slope {:.4} (95% CI [{:.4}, {:.4}], r2 {:.4})",
                f.method.as_str(),
                fit.slope,
                fit.ci[0],
                fit.ci[1],
                fit.r2
            ),
            (None, Some(why)) => eprintln!("{} slope skipped: {why}", f.method.as_str()),
            _ => {}
        }
    }
    for c in &result.checks {
        let tag = if c.passed { "ok" } else { "FAILED" };
        eprintln!("check {}: {tag} ({})", c.name, c.detail);
    }
    if cfg.output.is_none() {
        emit(&result.to_json()?)?;
    }
    if result.has_failures() {
        return Ok(ExitCode::from(1));
    }
    if check && !result.passed() {
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Constants {
            lambda,
            truncation_radius,
        } => {
            let spec = match truncation_radius {
                Some(r) => KernelSpec::with_truncation_radius(lambda, r)?,
                None => KernelSpec::new(lambda)?,
            };
            emit(&serde_json::to_string_pretty(&spec)?)?;
        }
        Command::SimulateFrame(args) => simulate(&args, false)?,
        Command::SimulateOnebit(args) => simulate(&args, true)?,
        Command::FixedPoint { sim, exact, out } => fixed_point(&sim, exact, out.as_ref())?,
        Command::Sweep {
            config,
            out,
            check,
            threads,
        } => return run_sweep(&config, out, check, threads),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            if let Some(Error::NonConvergence { .. }) = e.downcast_ref::<Error>() {
                eprintln!("error: {e}");
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(1)
        }
    }
}

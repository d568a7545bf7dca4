//! Estimators.
//!
//! * Frame estimator from unquantized samples:
//!   `G_fr(t) = tau sum_n Y(n tau) phi(t - n tau)`.
//! * One-bit interpolator: `H_N(t) = tau sum_n (X(n tau) - 1/2) phi(t - n tau)`,
//!   an estimate of `h = l * phi` with `l = F(g) - 1/2`.
//! * The contraction `T[m] = clip(mu h + (m - mu (F(m) - 1/2)) * phi) * phi`,
//!   whose fixed point recovers `g` from `h`, iterated from `m = 0`.
//! * The inverse-CDF estimate of a constant from its dithered bits.
//!
//! Sample sums are taken on a fixed reconstruction grid. When the grid and
//! the sample lattice are commensurate every kernel lag is a multiple of a
//! common unit, so the kernel is tabulated once and each grid value becomes
//! a dot product with a slice of the table.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::kernel::{dot, phi_raw, sup_norm, Grid, GridConvolver, KernelSpec};
use crate::noise::NoiseModel;
use crate::sampling::SampleRecord;

/// Which estimator produced a reconstruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Frame,
    #[serde(rename = "onebit")]
    OneBit,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Frame => "frame",
            Method::OneBit => "onebit",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "frame" => Ok(Method::Frame),
            "onebit" => Ok(Method::OneBit),
            other => Err(invalid("method", format!("unknown method `{other}`"))),
        }
    }
}

/// An estimate on a grid with its iteration trace.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub grid: Grid,
    pub iterations: usize,
    /// `||G_k - G_{k-1}||` per iteration; empty for the frame estimator.
    pub residual_history: Vec<f64>,
    pub method: Method,
}

/// `H_N` on a grid; its mean approximates `(F(g) - 1/2) * phi`.
#[derive(Debug, Clone)]
pub struct OneBitIntermediate {
    pub grid: Grid,
}

/// Largest lattice refinement searched when matching grid and sample spacings.
const MAX_LATTICE_REFINEMENT: u64 = 512;

/// Precomputed weights for `tau sum_n v_n phi(t_i - n tau)` on a fixed grid
/// and sample index range.
#[derive(Debug, Clone)]
pub struct LatticeKernel {
    tau: f64,
    samples: usize,
    grid_len: usize,
    form: Form,
}

#[derive(Debug, Clone)]
enum Form {
    /// `table[first_i - i * row_step + j * stride]` is `phi(t_i - t_j)`.
    Tabulated {
        table: Vec<f64>,
        row_step: usize,
        stride: usize,
        first: usize,
    },
    Direct {
        a: f64,
        grid_times: Vec<f64>,
        sample_times: Vec<f64>,
    },
}

impl LatticeKernel {
    /// Kernel for samples `n_lo .. n_lo + samples` at spacing `tau` and the
    /// geometry of `grid`.
    pub fn new(
        spec: &KernelSpec,
        grid: &Grid,
        tau: f64,
        n_lo: i64,
        samples: usize,
    ) -> Result<Self> {
        if !(tau.is_finite() && tau > 0.0) {
            return Err(invalid("tau", format!("must be positive, got {tau}")));
        }
        if samples == 0 {
            return Err(invalid("samples", "empty sample record"));
        }
        let a = spec.a();
        let form = match common_unit(grid.step(), tau, grid.t0()) {
            Some((p, q, k0)) => {
                // Lag index e = n q - k0 - i p, in units of tau / q.
                let u = tau / q as f64;
                let e_min = n_lo * q as i64 - k0 - ((grid.len() - 1) * p) as i64;
                let e_max = (n_lo + samples as i64 - 1) * q as i64 - k0;
                let table = (e_min..=e_max).map(|e| phi_raw(a, e as f64 * u)).collect();
                Form::Tabulated {
                    table,
                    row_step: p,
                    stride: q as usize,
                    first: ((grid.len() - 1) * p),
                }
            }
            None => Form::Direct {
                a,
                grid_times: grid.times().collect(),
                sample_times: (0..samples)
                    .map(|j| (n_lo + j as i64) as f64 * tau)
                    .collect(),
            },
        };
        Ok(Self {
            tau,
            samples,
            grid_len: grid.len(),
            form,
        })
    }

    pub fn for_record(spec: &KernelSpec, grid: &Grid, rec: &SampleRecord) -> Result<Self> {
        Self::new(spec, grid, rec.tau, rec.n_lo, rec.len())
    }

    /// Whether the tabulated fast path is in use.
    pub fn is_tabulated(&self) -> bool {
        matches!(self.form, Form::Tabulated { .. })
    }

    pub fn grid_len(&self) -> usize {
        self.grid_len
    }

    /// `tau sum_n v_n phi(t_i - n tau)` for every grid point.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.samples, "sample count mismatch");
        (0..self.grid_len)
            .map(|i| self.tau * self.row_dot(i, v))
            .collect()
    }

    /// Two sums over the same samples in one pass.
    pub fn apply_pair(&self, v: &[f64], w: &[f64]) -> (Vec<f64>, Vec<f64>) {
        assert_eq!(v.len(), self.samples, "sample count mismatch");
        assert_eq!(w.len(), self.samples, "sample count mismatch");
        let mut out_v = Vec::with_capacity(self.grid_len);
        let mut out_w = Vec::with_capacity(self.grid_len);
        for i in 0..self.grid_len {
            let (x, y) = match &self.form {
                Form::Tabulated {
                    table,
                    row_step,
                    stride: 1,
                    first,
                } => {
                    let start = first - i * row_step;
                    dot_pair(&table[start..start + self.samples], v, w)
                }
                _ => (self.row_dot(i, v), self.row_dot(i, w)),
            };
            out_v.push(self.tau * x);
            out_w.push(self.tau * y);
        }
        (out_v, out_w)
    }

    fn row_dot(&self, i: usize, v: &[f64]) -> f64 {
        match &self.form {
            Form::Tabulated {
                table,
                row_step,
                stride,
                first,
            } => {
                let start = first - i * row_step;
                if *stride == 1 {
                    dot(&table[start..start + self.samples], v)
                } else {
                    v.iter()
                        .enumerate()
                        .map(|(j, x)| x * table[start + j * stride])
                        .sum()
                }
            }
            Form::Direct {
                a,
                grid_times,
                sample_times,
            } => {
                let t = grid_times[i];
                v.iter()
                    .zip(sample_times)
                    .map(|(x, s)| x * phi_raw(*a, t - s))
                    .sum()
            }
        }
    }
}

/// Finds integers `p, q` with `step = p (tau / q)` and `t0 = k0 (tau / q)`.
fn common_unit(step: f64, tau: f64, t0: f64) -> Option<(usize, u64, i64)> {
    for q in 1..=MAX_LATTICE_REFINEMENT {
        let u = tau / q as f64;
        let p = (step / u).round();
        if p < 1.0 || (p * u - step).abs() > 1e-9 * step {
            continue;
        }
        let k0 = (t0 / u).round();
        if (k0 * u - t0).abs() > 1e-10 * t0.abs().max(1.0) {
            continue;
        }
        return Some((p as usize, q, k0 as i64));
    }
    None
}

#[inline]
fn dot_pair(k: &[f64], v: &[f64], w: &[f64]) -> (f64, f64) {
    let n = k.len();
    let (v, w) = (&v[..n], &w[..n]);
    let mut sv = [0.0f64; 4];
    let mut sw = [0.0f64; 4];
    let chunks = n / 4;
    for c in 0..chunks {
        let b = 4 * c;
        for l in 0..4 {
            sv[l] += k[b + l] * v[b + l];
            sw[l] += k[b + l] * w[b + l];
        }
    }
    let mut x = (sv[0] + sv[1]) + (sv[2] + sv[3]);
    let mut y = (sw[0] + sw[1]) + (sw[2] + sw[3]);
    for j in 4 * chunks..n {
        x += k[j] * v[j];
        y += k[j] * w[j];
    }
    (x, y)
}

/// `X - 1/2` as reals.
pub fn centered_bits(bits: &[u8]) -> Vec<f64> {
    bits.iter().map(|&b| f64::from(b) - 0.5).collect()
}

/// Frame estimate on the geometry of `grid` (its values are ignored).
pub fn frame_estimate(
    rec: &SampleRecord,
    spec: &KernelSpec,
    grid: &Grid,
) -> Result<Reconstruction> {
    let y = rec.reals()?;
    let lk = LatticeKernel::for_record(spec, grid, rec)?;
    Ok(Reconstruction {
        grid: grid.with_values(lk.apply(y))?,
        iterations: 0,
        residual_history: Vec::new(),
        method: Method::Frame,
    })
}

/// `H_N` on the geometry of `grid`.
pub fn onebit_interpolate(
    rec: &SampleRecord,
    spec: &KernelSpec,
    grid: &Grid,
) -> Result<OneBitIntermediate> {
    let x = centered_bits(rec.bits()?);
    let lk = LatticeKernel::for_record(spec, grid, rec)?;
    Ok(OneBitIntermediate {
        grid: grid.with_values(lk.apply(&x))?,
    })
}

/// Clip to `[-1, 1]`.
pub fn clip(x: f64) -> f64 {
    if x.abs() <= 1.0 {
        x
    } else {
        x.signum()
    }
}

/// The contraction `T` on a fixed grid geometry.
#[derive(Debug, Clone)]
pub struct ContractionMap {
    conv: GridConvolver,
    model: NoiseModel,
}

impl ContractionMap {
    pub fn new(model: &NoiseModel, spec: &KernelSpec, step: f64, count: usize) -> Result<Self> {
        model.require_admissible()?;
        if count < 2 {
            return Err(invalid("count", "grid needs at least two points"));
        }
        Ok(Self {
            conv: GridConvolver::phi(spec, step, count),
            model: *model,
        })
    }

    pub fn model(&self) -> &NoiseModel {
        &self.model
    }

    /// `out = T[m]` for the given `h`; `scratch` must have the grid length.
    pub fn apply_into(&self, h: &[f64], m: &[f64], scratch: &mut [f64], out: &mut [f64]) {
        let mu = self.model.mu();
        for (s, &x) in scratch.iter_mut().zip(m) {
            *s = x - mu * (self.model.cdf(x) - 0.5);
        }
        self.conv.apply_into(scratch, out);
        for ((s, o), hv) in scratch.iter_mut().zip(out.iter()).zip(h) {
            *s = clip(mu * hv + o);
        }
        self.conv.apply_into(scratch, out);
    }

    pub fn apply(&self, h: &[f64], m: &[f64]) -> Vec<f64> {
        let mut scratch = vec![0.0; m.len()];
        let mut out = vec![0.0; m.len()];
        self.apply_into(h, m, &mut scratch, &mut out);
        out
    }
}

/// One application of `T` to `m` with data term `h`.
pub fn apply_t(h: &Grid, m: &Grid, model: &NoiseModel, spec: &KernelSpec) -> Result<Grid> {
    h.check_same_geometry(m)?;
    let map = ContractionMap::new(model, spec, m.step(), m.len())?;
    m.with_values(map.apply(h.values(), m.values()))
}

/// Stopping rule and starting point for [`fixed_point_solve`].
#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    pub tol: f64,
    /// Defaults to the contraction-predicted count plus a margin.
    pub max_iters: Option<usize>,
    /// Starting grid values; zero when absent.
    pub init: Option<Vec<f64>>,
}

impl SolveOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }

    /// `0.01 / sqrt(N)`, the statistical noise floor of a noisy run.
    pub fn noisy(n_factor: usize) -> Self {
        Self::with_tol(0.01 / (n_factor as f64).sqrt())
    }

    /// Tight tolerance for runs driven by an exact `h`.
    pub fn exact() -> Self {
        Self::with_tol(1e-8)
    }
}

/// Iterations the contraction bound needs to reach `tol` from a first step
/// of size `first`, plus ten.
pub fn predicted_iterations(alpha: f64, first: f64, tol: f64) -> usize {
    if first <= tol {
        return 1;
    }
    if alpha <= 0.0 {
        return 11;
    }
    let k = ((tol * (1.0 - alpha) / first).ln() / alpha.ln()).ceil();
    k.max(1.0) as usize + 10
}

/// Iterates `G_{k+1} = T[G_k]` until the sup-grid step is at most `tol`.
pub fn fixed_point_solve(
    h: &Grid,
    model: &NoiseModel,
    spec: &KernelSpec,
    opts: &SolveOptions,
) -> Result<Reconstruction> {
    let map = ContractionMap::new(model, spec, h.step(), h.len())?;
    solve_with(&map, h, opts)
}

/// [`fixed_point_solve`] with a prebuilt map.
pub fn solve_with(map: &ContractionMap, h: &Grid, opts: &SolveOptions) -> Result<Reconstruction> {
    if !(opts.tol > 0.0) {
        return Err(invalid(
            "tol",
            format!("must be positive, got {}", opts.tol),
        ));
    }
    let n = h.len();
    let mut m = match &opts.init {
        Some(v) if v.len() == n => v.clone(),
        Some(v) => {
            return Err(Error::GeometryMismatch(format!(
                "initial grid has {} points, expected {n}",
                v.len()
            )));
        }
        None => vec![0.0; n],
    };
    let alpha = map.model().alpha();
    let mut next = vec![0.0; n];
    let mut scratch = vec![0.0; n];
    let mut history = Vec::new();
    let mut limit = opts.max_iters;
    let mut first = 0.0;
    loop {
        map.apply_into(h.values(), &m, &mut scratch, &mut next);
        let res = m
            .iter()
            .zip(&next)
            .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()));
        std::mem::swap(&mut m, &mut next);
        history.push(res);
        let k = history.len();
        if k == 1 {
            first = res;
            limit.get_or_insert_with(|| predicted_iterations(alpha, first, opts.tol));
        }
        if res <= opts.tol {
            break;
        }
        if k >= limit.unwrap_or(usize::MAX) {
            return Err(Error::NonConvergence {
                iterations: k,
                last_residual: res,
                predicted_bound: alpha.powi(k as i32) * first / (1.0 - alpha),
            });
        }
    }
    Ok(Reconstruction {
        grid: h.with_values(m)?,
        iterations: history.len(),
        residual_history: history,
        method: Method::OneBit,
    })
}

/// `F^{-1}` of the fraction of ones, clamped to `[-1, 1]`.
pub fn constant_onebit_estimate(bits: &[u8], model: &NoiseModel) -> Result<f64> {
    if bits.is_empty() {
        return Err(invalid("bits", "empty bit sequence"));
    }
    let ones = bits.iter().filter(|&&b| b != 0).count();
    let b_hat = ones as f64 / bits.len() as f64;
    if b_hat < model.cdf(-1.0) {
        Ok(-1.0)
    } else if b_hat > model.cdf(1.0) {
        Ok(1.0)
    } else {
        Ok(model.inverse_cdf(b_hat))
    }
}

/// `sup |a - b|` over two equally long slices.
pub fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
}

/// `sup |v|`.
pub fn sup(v: &[f64]) -> f64 {
    sup_norm(v)
}

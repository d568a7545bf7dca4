//! Bounded bandlimited test signals.
//!
//! A [`BandlimitedSignal`] is stored as its Nyquist-rate samples
//! `c_k = g(k / lambda)` and evaluated with the stable interpolation formula
//! `g(t) = (1 / lambda) sum_k c_k phi(t - k / lambda)`.
//!
//! Synthetic signals are sums of windowed sinc atoms whose spectrum sits well
//! inside `[-pi, pi]`. The atoms occupy the middle of the coefficient range
//! (the *active* region); on either side the coefficients decay to
//! negligible size over a margin, so the finite coefficient set stands in
//! for a two-sided signal without edge artifacts.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::kernel::{convolve_with_phi, phi_raw, Grid, GridConvolver, KernelSpec};
use crate::numeric::golden_max;
use crate::rng::Uniforms;

/// Guard margin, in Nyquist intervals, between the coefficient range and the
/// evaluation window.
pub const GUARD: usize = 8;

/// Seconds over which the atom envelope decays to below `1e-8`.
pub const DECAY_MARGIN: f64 = 21.0;

/// Dense-grid sup-norm density, points per second.
pub const SUP_GRID_DENSITY: usize = 32;

const ATOM_BAND: f64 = 0.5 * PI;
const ATOM_ENVELOPE_STD: f64 = 3.5;

fn atom(x: f64) -> f64 {
    let s = ATOM_BAND * x;
    let sinc = if s == 0.0 { 1.0 } else { s.sin() / s };
    sinc * (-0.5 * x * x / (ATOM_ENVELOPE_STD * ATOM_ENVELOPE_STD)).exp()
}

/// A member of the bounded bandlimited class reproduced by `phi`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandlimitedSignal {
    spec: KernelSpec,
    coeffs: Vec<f64>,
    window: [f64; 2],
    active: [f64; 2],
    seed: Option<u64>,
}

#[derive(Serialize, Deserialize)]
struct SignalFile {
    lambda: f64,
    coeffs: Vec<f64>,
    window: [f64; 2],
    active: [f64; 2],
    seed: Option<u64>,
}

impl BandlimitedSignal {
    /// Builds a signal from Nyquist-rate coefficients. `window` and `active`
    /// must lie inside the coefficient span and `active` inside `window`.
    pub fn from_coeffs(
        spec: KernelSpec,
        coeffs: Vec<f64>,
        window: [f64; 2],
        active: [f64; 2],
        seed: Option<u64>,
    ) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(invalid("coeffs", "need at least two coefficients"));
        }
        if let Some(c) = coeffs.iter().find(|c| !(c.abs() <= 1.0)) {
            return Err(invalid(
                "coeffs",
                format!("coefficient {c} outside [-1, 1]"),
            ));
        }
        let span = (coeffs.len() - 1) as f64 / spec.lambda();
        let ordered = |lo: f64, hi: f64| lo.is_finite() && hi.is_finite() && lo < hi;
        if !ordered(window[0], window[1]) || window[0] < 0.0 || window[1] > span {
            return Err(invalid(
                "window",
                format!("{window:?} not inside [0, {span}]"),
            ));
        }
        if !ordered(active[0], active[1]) || active[0] < window[0] || active[1] > window[1] {
            return Err(invalid(
                "active",
                format!("{active:?} not inside window {window:?}"),
            ));
        }
        Ok(Self {
            spec,
            coeffs,
            window,
            active,
            seed,
        })
    }

    /// Random signal: `k_atoms` atoms at spacing `1 / lambda` with i.i.d.
    /// uniform weights, rescaled so the measured sup-norm equals `amplitude`.
    pub fn synth_random(
        spec: KernelSpec,
        k_atoms: usize,
        amplitude: f64,
        seed: u64,
    ) -> Result<Self> {
        check_atoms(k_atoms)?;
        let mut u = Uniforms::new(seed);
        let weights: Vec<f64> = (0..k_atoms).map(|_| u.range(-1.0, 1.0)).collect();
        Self::from_atom_weights(spec, &weights, amplitude, Some(seed))
    }

    /// Deterministic tone-like signal: atom weights `cos(omega j / lambda)`.
    pub fn synth_tone(
        spec: KernelSpec,
        k_atoms: usize,
        omega: f64,
        amplitude: f64,
    ) -> Result<Self> {
        check_atoms(k_atoms)?;
        let lambda = spec.lambda();
        let weights: Vec<f64> = (0..k_atoms)
            .map(|j| (omega * j as f64 / lambda).cos())
            .collect();
        Self::from_atom_weights(spec, &weights, amplitude, None)
    }

    /// The zero signal on the geometry a `k_atoms` synthesis would use.
    pub fn zero(spec: KernelSpec, k_atoms: usize) -> Result<Self> {
        check_atoms(k_atoms)?;
        let layout = Layout::new(&spec, k_atoms);
        Self::from_coeffs(
            spec,
            vec![0.0; layout.len],
            layout.window,
            layout.active,
            None,
        )
    }

    fn from_atom_weights(
        spec: KernelSpec,
        weights: &[f64],
        amplitude: f64,
        seed: Option<u64>,
    ) -> Result<Self> {
        if !(amplitude > 0.0 && amplitude <= 1.0) {
            return Err(invalid(
                "amplitude",
                format!("must lie in (0, 1], got {amplitude}"),
            ));
        }
        let lambda = spec.lambda();
        let layout = Layout::new(&spec, weights.len());
        let coeffs: Vec<f64> = (0..layout.len)
            .map(|k| {
                weights
                    .iter()
                    .enumerate()
                    .map(|(j, w)| w * atom((k as f64 - (layout.pad + j) as f64) / lambda))
                    .sum()
            })
            .collect();
        let mut sig = Self {
            spec,
            coeffs,
            window: layout.window,
            active: layout.active,
            seed,
        };
        let peak = sig
            .sup_norm()
            .max(sig.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs())));
        if peak > 0.0 {
            let scale = amplitude / peak;
            sig.coeffs
                .iter_mut()
                .for_each(|c| *c = (*c * scale).clamp(-1.0, 1.0));
        }
        Ok(sig)
    }

    pub fn spec(&self) -> &KernelSpec {
        &self.spec
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Evaluation window `[t_lo, t_hi]`.
    pub fn window(&self) -> [f64; 2] {
        self.window
    }

    /// Interior region carrying the signal energy; distortion is measured here.
    pub fn active(&self) -> [f64; 2] {
        self.active
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// `g(t)` for `t` inside the window.
    pub fn eval(&self, t: f64) -> Result<f64> {
        let [lo, hi] = self.window;
        if !(t >= lo && t <= hi) {
            return Err(Error::OutsideWindow { t, lo, hi });
        }
        Ok(self.eval_unchecked(t))
    }

    pub(crate) fn eval_unchecked(&self, t: f64) -> f64 {
        let lambda = self.spec.lambda();
        let a = self.spec.a();
        let acc: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * phi_raw(a, t - k as f64 / lambda))
            .sum();
        acc / lambda
    }

    /// Values of `g` on `count` points from `t0` with spacing `step`, all
    /// inside the window.
    pub fn sample_grid(&self, t0: f64, step: f64, count: usize) -> Result<Grid> {
        let last = t0 + step * count.saturating_sub(1) as f64;
        for t in [t0, last] {
            self.eval(t)?;
        }
        Grid::from_fn(t0, step, count, |t| self.eval_unchecked(t))
    }

    /// Grid covering the whole window at `points_per_interval` points per
    /// Nyquist interval `1 / lambda`, starting at the window's left edge.
    pub fn window_grid(&self, points_per_interval: usize) -> Result<Grid> {
        let step = 1.0 / (self.spec.lambda() * points_per_interval as f64);
        let count = ((self.window[1] - self.window[0]) / step + 1e-9).floor() as usize + 1;
        self.sample_grid(self.window[0], step, count)
    }

    /// Sup-norm over the window: dense scan plus golden refinement.
    pub fn sup_norm(&self) -> f64 {
        let [lo, hi] = self.window;
        let count = ((hi - lo) * SUP_GRID_DENSITY as f64).ceil() as usize;
        let step = (hi - lo) / count as f64;
        let mut best = (lo, 0.0f64);
        for i in 0..=count {
            let t = lo + step * i as f64;
            let v = self.eval_unchecked(t).abs();
            if v > best.1 {
                best = (t, v);
            }
        }
        if best.1 == 0.0 {
            return 0.0;
        }
        let a = (best.0 - step).max(lo);
        let b = (best.0 + step).min(hi);
        let (_, refined) = golden_max(|t| self.eval_unchecked(t).abs(), a, b, 1e-10);
        best.1.max(refined)
    }

    /// Sup deviation between `g` and its frame expansion
    /// `tau sum_n g(n tau) phi(t - n tau)`, `tau = 1 / (lambda N)`, over a
    /// grid of the active region. Samples cover the window.
    pub fn frame_expand_check(&self, n_factor: usize) -> Result<f64> {
        if n_factor == 0 {
            return Err(invalid("N", "must be at least 1"));
        }
        let lambda = self.spec.lambda();
        let a = self.spec.a();
        let tau = 1.0 / (lambda * n_factor as f64);
        let n_lo = (self.window[0] / tau).ceil() as i64;
        let n_hi = (self.window[1] / tau).floor() as i64;
        let samples: Vec<(f64, f64)> = (n_lo..=n_hi)
            .map(|n| {
                let t = n as f64 * tau;
                (t, self.eval_unchecked(t))
            })
            .collect();
        let [lo, hi] = self.active;
        let points = ((hi - lo) * 8.0).ceil() as usize;
        let mut worst = 0.0f64;
        for i in 0..=points {
            let t = lo + (hi - lo) * i as f64 / points as f64;
            let expansion: f64 = samples
                .iter()
                .map(|(tn, y)| y * phi_raw(a, t - tn))
                .sum::<f64>()
                * tau;
            worst = worst.max((expansion - self.eval_unchecked(t)).abs());
        }
        Ok(worst)
    }

    /// `sup |g - g * phi|` over the window, with `g * phi` computed by the
    /// grid convolution at `points_per_interval` points per `1 / lambda`.
    /// Returns the deviation and the reported quadrature error.
    pub fn reproduction_error(&self, points_per_interval: usize) -> Result<(f64, f64)> {
        let g = self.window_grid(points_per_interval)?;
        let conv = convolve_with_phi(&self.spec, &g)?;
        let dev = g
            .values()
            .iter()
            .zip(conv.grid.values())
            .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
        Ok((dev, conv.quad_error))
    }

    pub fn to_json(&self) -> Result<String> {
        let file = SignalFile {
            lambda: self.spec.lambda(),
            coeffs: self.coeffs.clone(),
            window: self.window,
            active: self.active,
            seed: self.seed,
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    /// Rebuilds a signal from [`BandlimitedSignal::to_json`] output,
    /// recomputing the kernel constants.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: SignalFile = serde_json::from_str(text)?;
        let spec = KernelSpec::new(file.lambda)?;
        Self::from_coeffs(spec, file.coeffs, file.window, file.active, file.seed)
    }
}

fn check_atoms(k_atoms: usize) -> Result<()> {
    if k_atoms >= 16 {
        Ok(())
    } else {
        Err(invalid(
            "K",
            format!("need at least 16 atoms, got {k_atoms}"),
        ))
    }
}

/// Coefficient layout for `k_atoms` atoms: `pad` coefficients on each side.
struct Layout {
    pad: usize,
    len: usize,
    window: [f64; 2],
    active: [f64; 2],
}

impl Layout {
    fn new(spec: &KernelSpec, k_atoms: usize) -> Self {
        let lambda = spec.lambda();
        let pad = GUARD + (DECAY_MARGIN * lambda).ceil() as usize;
        let len = k_atoms + 2 * pad;
        Self {
            pad,
            len,
            window: [GUARD as f64 / lambda, (len - 1 - GUARD) as f64 / lambda],
            active: [pad as f64 / lambda, (pad + k_atoms - 1) as f64 / lambda],
        }
    }
}

/// A grid-backed member of the enlarged class: bounded by `C_phi` and
/// reproduced by `psi(t) = lambda phi(lambda t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundedBlSignal {
    spec: KernelSpec,
    grid: Grid,
}

impl BoundedBlSignal {
    /// Wraps a grid after checking the `C_phi` bound (with `slack` for
    /// quadrature error).
    pub fn new(spec: KernelSpec, grid: Grid, slack: f64) -> Result<Self> {
        let sup = grid.sup_norm();
        if sup > spec.c_phi() + slack {
            return Err(invalid(
                "grid",
                format!("sup-norm {sup} exceeds C_phi = {}", spec.c_phi()),
            ));
        }
        Ok(Self { spec, grid })
    }

    /// `clip(r) * phi` for an arbitrary grid `r`: the range of the
    /// contraction map, hence a member of the class.
    pub fn from_clipped(spec: KernelSpec, r: &Grid) -> Result<Self> {
        let clipped: Vec<f64> = r.values().iter().map(|&x| x.clamp(-1.0, 1.0)).collect();
        let conv = convolve_with_phi(&spec, &r.with_values(clipped)?)?;
        Self::new(spec, conv.grid, conv.quad_error)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn into_grid(self) -> Grid {
        self.grid
    }

    /// `sup |m - m * psi|` over grid points at least `margin` seconds from
    /// either grid edge.
    pub fn reproduction_error(&self, margin: f64) -> f64 {
        let g = &self.grid;
        let conv = GridConvolver::psi(&self.spec, g.step(), g.len());
        let out = conv.apply(g.values());
        let (lo, hi) = (g.t0() + margin, g.t_end() - margin);
        g.times()
            .zip(g.values().iter().zip(&out))
            .filter(|(t, _)| *t >= lo && *t <= hi)
            .fold(0.0f64, |m, (_, (x, y))| m.max((x - y).abs()))
    }
}

//! The stable interpolation kernel
//!
//! ```text
//! phi(t) = sin((pi + a) t) sin(a t) / (pi a t^2),   phi(0) = 1 + a / pi,   a = (lambda - 1) / 2
//! ```
//!
//! Its Fourier transform equals one on `[-pi, pi]` and rolls off linearly to
//! zero at `pi + 2a`, so `phi` reproduces every signal bandlimited to
//! `[-pi, pi]` and decays like `1 / t^2`. This module evaluates `phi` and
//! `phi'`, computes the three summability constants used by the error
//! bounds, and provides the trapezoid-rule grid convolution that every
//! estimator is built on.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::numeric::{gauss_legendre, scan_then_refine};

/// Below this `|t|` the kernel is evaluated from its Taylor expansion.
pub const TAYLOR_THRESHOLD: f64 = 1e-6;

/// Target accuracy for the numerically computed kernel constants.
pub const CONSTANT_TOLERANCE: f64 = 1e-8;

/// Points scanned over one period when searching for the `C''` supremum.
const DPRIME_SCAN_POINTS: usize = 10_000;

/// `E|sin(x) sin(y)|` for incommensurate phases; the mean of `|phi|` tails.
const MEAN_ABS_SIN_PRODUCT: f64 = 4.0 / (PI * PI);

/// Kernel parameters together with the cached constants
/// `C = int |phi|`, `C' = sup sum_k |phi'(t_k)|` and
/// `C'' = sup_t sum_k phi(t - k/lambda)^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelSpec {
    lambda: f64,
    a: f64,
    c_phi: f64,
    c_phi_prime: f64,
    c_phi_dprime: f64,
    truncation_radius: f64,
}

impl KernelSpec {
    /// Builds the kernel for `lambda > 1` and computes its constants with the
    /// default truncation radius.
    pub fn new(lambda: f64) -> Result<Self> {
        check_lambda(lambda)?;
        let a = 0.5 * (lambda - 1.0);
        Self::with_truncation_radius(lambda, default_truncation_radius(a))
    }

    /// Same as [`KernelSpec::new`] with an explicit truncation radius for the
    /// constant integrals and sums.
    pub fn with_truncation_radius(lambda: f64, radius: f64) -> Result<Self> {
        check_lambda(lambda)?;
        if !(radius.is_finite() && radius >= 1.0) {
            return Err(invalid(
                "truncation_radius",
                format!("must be finite and >= 1, got {radius}"),
            ));
        }
        let a = 0.5 * (lambda - 1.0);
        let c_phi = abs_integral(a, radius);
        let c_phi_prime = derivative_cell_sum(lambda, a, radius);
        let c_phi_dprime = square_sum_sup(lambda, a, radius);
        Ok(Self {
            lambda,
            a,
            c_phi,
            c_phi_prime,
            c_phi_dprime,
            truncation_radius: radius,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// `int |phi(t)| dt`.
    pub fn c_phi(&self) -> f64 {
        self.c_phi
    }

    /// `sup over per-cell placements of sum_k |phi'(t_k)|`, `t_k in [k/lambda, (k+1)/lambda]`.
    ///
    /// The supremum decouples across cells, so the per-cell maximum of
    /// `|phi'|` attains it; the value is the sum of those maxima plus an
    /// analytic bound on the cells beyond the truncation radius.
    pub fn c_phi_prime(&self) -> f64 {
        self.c_phi_prime
    }

    /// `sup_t sum_k phi(t - k/lambda)^2`.
    pub fn c_phi_dprime(&self) -> f64 {
        self.c_phi_dprime
    }

    pub fn truncation_radius(&self) -> f64 {
        self.truncation_radius
    }

    /// Default quadrature step for kernel convolutions, `1 / (64 lambda)`.
    pub fn default_step(&self) -> f64 {
        1.0 / (64.0 * self.lambda)
    }

    /// `phi(t)`; continuous through the removable singularity at the origin.
    pub fn phi(&self, t: f64) -> f64 {
        phi_raw(self.a, t)
    }

    /// `phi'(t)`, odd in `t`.
    pub fn phi_derivative(&self, t: f64) -> f64 {
        let b = PI + self.a;
        let a = self.a;
        (b / PI)
            * (b * sinc_derivative(b * t) * sinc(a * t) + a * sinc(b * t) * sinc_derivative(a * t))
    }

    /// The unit-gain dilate `psi(t) = lambda phi(lambda t)`, flat on `[-lambda pi, lambda pi]`.
    pub fn psi(&self, t: f64) -> f64 {
        self.lambda * self.phi(self.lambda * t)
    }

    /// Envelope `|phi(t)| <= 1 / (pi a t^2)`.
    pub fn tail_bound(&self, t: f64) -> f64 {
        1.0 / (PI * self.a * t * t)
    }

    /// Signed integral `int phi`, which equals the transform at the origin (one).
    pub fn signed_integral(&self) -> f64 {
        let mut acc = 0.0;
        for_each_panel(self.a, self.truncation_radius, |lo, hi| {
            acc += gauss_legendre(|t| phi_raw(self.a, t), lo, hi);
        });
        2.0 * acc
    }
}

/// Spec-level alias for [`KernelSpec::phi`].
pub fn eval_phi(spec: &KernelSpec, t: f64) -> f64 {
    spec.phi(t)
}

/// Spec-level alias for [`KernelSpec::phi_derivative`].
pub fn eval_phi_derivative(spec: &KernelSpec, t: f64) -> f64 {
    spec.phi_derivative(t)
}

/// Builds a [`KernelSpec`] for `lambda`, computing all constants.
pub fn compute_constants(lambda: f64) -> Result<KernelSpec> {
    KernelSpec::new(lambda)
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda > 1.0 {
        Ok(())
    } else {
        Err(invalid("lambda", format!("must exceed 1, got {lambda}")))
    }
}

/// Radius beyond which the `|phi|` integral is replaced by its asymptotic
/// mean; the residual of that replacement behaves like `1 / (pi a R^2)`.
fn default_truncation_radius(a: f64) -> f64 {
    (1.0 / (PI * a * CONSTANT_TOLERANCE)).sqrt().ceil()
}

pub(crate) fn phi_raw(a: f64, t: f64) -> f64 {
    let b = PI + a;
    if t.abs() < TAYLOR_THRESHOLD {
        // phi(t) = (cos(pi t) - cos(c t)) / (2 pi a t^2), c = pi + 2a.
        let c = PI + 2.0 * a;
        let (p2, c2) = (PI * PI, c * c);
        let t2 = t * t;
        (c2 - p2) / (4.0 * PI * a) - (c2 * c2 - p2 * p2) * t2 / (48.0 * PI * a)
            + (c2 * c2 * c2 - p2 * p2 * p2) * t2 * t2 / (1440.0 * PI * a)
    } else {
        (b / PI) * sinc(b * t) * sinc(a * t)
    }
}

fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

fn sinc_derivative(x: f64) -> f64 {
    if x.abs() < 1e-2 {
        let x2 = x * x;
        x * (-1.0 / 3.0 + x2 * (1.0 / 30.0 + x2 * (-1.0 / 840.0 + x2 / 45360.0)))
    } else {
        (x * x.cos() - x.sin()) / (x * x)
    }
}

/// Calls `f(lo, hi)` for consecutive zeros of `phi` on `[0, radius]`, so each
/// panel holds a smooth, sign-definite integrand.
fn for_each_panel<F: FnMut(f64, f64)>(a: f64, radius: f64, mut f: F) {
    let fast = PI / (PI + a);
    let slow = PI / a;
    let (mut i, mut j) = (1usize, 1usize);
    let mut lo = 0.0;
    loop {
        let zf = fast * i as f64;
        let zs = slow * j as f64;
        let next = zf.min(zs);
        if next >= radius {
            f(lo, radius);
            break;
        }
        if (zf - zs).abs() < 1e-12 {
            i += 1;
            j += 1;
        } else if zf < zs {
            i += 1;
        } else {
            j += 1;
        }
        if next > lo {
            f(lo, next);
            lo = next;
        }
    }
}

fn abs_integral(a: f64, radius: f64) -> f64 {
    let mut acc = 0.0;
    for_each_panel(a, radius, |lo, hi| {
        acc += gauss_legendre(|t| phi_raw(a, t), lo, hi).abs();
    });
    2.0 * (acc + MEAN_ABS_SIN_PRODUCT / (PI * a * radius))
}

fn derivative_cell_sum(lambda: f64, a: f64, radius: f64) -> f64 {
    let b = PI + a;
    let cell = 1.0 / lambda;
    let cells = (lambda * radius).ceil() as usize;
    let spec_like = |t: f64| {
        (b / PI)
            * (b * sinc_derivative(b * t) * sinc(a * t) + a * sinc(b * t) * sinc_derivative(a * t))
    };
    let mut acc = 0.0;
    // |phi'| is even, so cell k and cell -k-1 carry the same maximum.
    for k in 0..cells {
        let lo = k as f64 * cell;
        let (_, m) = scan_then_refine(|t| spec_like(t).abs(), lo, lo + cell, 16, 1e-10 * cell);
        acc += m;
    }
    // |phi'(t)| <= (b + a) / (pi a t^2) + 2 / (pi a |t|^3) beyond the last cell.
    let edge = cells as f64 * cell - cell;
    let tail = lambda * ((b + a) / (PI * a * edge) + 1.0 / (PI * a * edge * edge));
    2.0 * (acc + tail)
}

fn square_sum_sup(lambda: f64, a: f64, radius: f64) -> f64 {
    let reach = (2.0 * lambda / (3.0 * PI * PI * a * a * CONSTANT_TOLERANCE))
        .cbrt()
        .min(radius);
    let terms = (lambda * reach).ceil() as i64;
    let sum_at = |t: f64| {
        (-terms..=terms)
            .map(|k| {
                let v = phi_raw(a, t - k as f64 / lambda);
                v * v
            })
            .sum::<f64>()
    };
    // The sum is even and 1/lambda-periodic: half a period covers every value.
    let half_period = 0.5 / lambda;
    let (_, sup) = scan_then_refine(sum_at, 0.0, half_period, DPRIME_SCAN_POINTS / 2, 1e-12);
    let edge = terms as f64 / lambda - 1.0 / lambda;
    let tail = 2.0 * lambda / (3.0 * PI * PI * a * a * edge.powi(3));
    sup + tail
}

/// Values on an equispaced time grid `t_i = t0 + i * step`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Grid {
    t0: f64,
    step: f64,
    values: Vec<f64>,
}

impl Grid {
    pub fn new(t0: f64, step: f64, values: Vec<f64>) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) {
            return Err(invalid("step", format!("must be positive, got {step}")));
        }
        if values.len() < 2 {
            return Err(invalid(
                "values",
                format!("a grid needs at least 2 points, got {}", values.len()),
            ));
        }
        if !t0.is_finite() {
            return Err(invalid("t0", "must be finite"));
        }
        Ok(Self { t0, step, values })
    }

    pub fn from_fn<F: FnMut(f64) -> f64>(
        t0: f64,
        step: f64,
        count: usize,
        mut f: F,
    ) -> Result<Self> {
        let values = (0..count).map(|i| f(t0 + step * i as f64)).collect();
        Self::new(t0, step, values)
    }

    pub fn zeros(t0: f64, step: f64, count: usize) -> Result<Self> {
        Self::new(t0, step, vec![0.0; count])
    }

    /// Grid with the geometry of `self` and new values.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.values.len() {
            return Err(Error::GeometryMismatch(format!(
                "expected {} values, got {}",
                self.values.len(),
                values.len()
            )));
        }
        Ok(Self {
            t0: self.t0,
            step: self.step,
            values,
        })
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn time(&self, i: usize) -> f64 {
        self.t0 + self.step * i as f64
    }

    pub fn t_end(&self) -> f64 {
        self.time(self.len() - 1)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(move |i| self.time(i))
    }

    pub fn sup_norm(&self) -> f64 {
        sup_norm(&self.values)
    }

    pub fn same_geometry(&self, other: &Grid) -> bool {
        self.len() == other.len()
            && (self.step - other.step).abs() <= 1e-12 * self.step
            && (self.t0 - other.t0).abs() <= 1e-9 * self.step.max(self.t0.abs())
    }

    pub(crate) fn check_same_geometry(&self, other: &Grid) -> Result<()> {
        if self.same_geometry(other) {
            Ok(())
        } else {
            Err(Error::GeometryMismatch(format!(
                "grid (t0={}, step={}, n={}) vs (t0={}, step={}, n={})",
                self.t0,
                self.step,
                self.len(),
                other.t0,
                other.step,
                other.len()
            )))
        }
    }
}

pub(crate) fn sup_norm(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Trapezoid-rule convolution with a fixed even kernel on a fixed grid
/// geometry. The kernel is tabulated once; each application is a
/// Toeplitz matrix-vector product.
#[derive(Debug, Clone)]
pub struct GridConvolver {
    step: f64,
    count: usize,
    /// `step * kernel((m - count + 1) * step)` for `m in 0..2 count - 1`.
    table: Vec<f64>,
}

impl GridConvolver {
    pub fn new<K: Fn(f64) -> f64>(step: f64, count: usize, kernel: K) -> Self {
        let half: Vec<f64> = (0..count).map(|k| step * kernel(k as f64 * step)).collect();
        let mut table = Vec::with_capacity(2 * count - 1);
        table.extend(half.iter().skip(1).rev());
        table.extend(half.iter());
        Self { step, count, table }
    }

    /// Convolver for `phi` on grids with `count` points spaced `step`.
    pub fn phi(spec: &KernelSpec, step: f64, count: usize) -> Self {
        let a = spec.a();
        Self::new(step, count, move |t| phi_raw(a, t))
    }

    /// Convolver for the dilate `psi`.
    pub fn psi(spec: &KernelSpec, step: f64, count: usize) -> Self {
        let s = *spec;
        Self::new(step, count, move |t| s.psi(t))
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// `step * sum_k |kernel(k step)|` over the tabulated lags.
    pub fn abs_kernel_sum(&self) -> f64 {
        self.table.iter().map(|v| v.abs()).sum()
    }

    /// Writes the trapezoid convolution of `input` into `out`.
    pub fn apply_into(&self, input: &[f64], out: &mut [f64]) {
        let n = self.count;
        assert_eq!(input.len(), n, "convolver built for {n} points");
        assert_eq!(out.len(), n, "convolver built for {n} points");
        let first = 0.5 * input[0];
        let last = 0.5 * input[n - 1];
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.table[n - 1 - i..2 * n - 1 - i];
            let mut acc = dot(row, input);
            // Trapezoid end weights.
            acc -= first * row[0] + last * row[n - 1];
            *o = acc;
        }
    }

    pub fn apply(&self, input: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; input.len()];
        self.apply_into(input, &mut out);
        out
    }

    /// Trapezoid estimate on the half-resolution sub-lattice through each
    /// output point, used for a Richardson error estimate.
    fn apply_coarse(&self, input: &[f64]) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| {
                let parity = i % 2;
                let idx: Vec<usize> = (parity..n).step_by(2).collect();
                let mut acc = 0.0;
                for (pos, &j) in idx.iter().enumerate() {
                    let w = if pos == 0 || pos + 1 == idx.len() {
                        0.5
                    } else {
                        1.0
                    };
                    acc += w * input[j] * self.table[j + n - 1 - i];
                }
                2.0 * acc
            })
            .collect()
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len().min(b.len());
    let (a, b) = (&a[..n], &b[..n]);
    let mut s = [0.0f64; 4];
    let chunks = n / 4;
    for c in 0..chunks {
        let k = 4 * c;
        s[0] += a[k] * b[k];
        s[1] += a[k + 1] * b[k + 1];
        s[2] += a[k + 2] * b[k + 2];
        s[3] += a[k + 3] * b[k + 3];
    }
    let mut acc = (s[0] + s[1]) + (s[2] + s[3]);
    for k in 4 * chunks..n {
        acc += a[k] * b[k];
    }
    acc
}

/// Output of [`convolve_with_phi`]: the convolved grid and a bound on the
/// quadrature error, valid as an additive slack in `||p * phi|| <= C ||p|| + eps`.
#[derive(Debug, Clone)]
pub struct Convolution {
    pub grid: Grid,
    /// Richardson estimate of the signed trapezoid error, plus the excess of
    /// the discrete `|phi|` sum over `C_phi` scaled by `||p||`.
    pub quad_error: f64,
}

/// Trapezoid approximation of `(p * phi)(t)` on the grid of `p`, treating `p`
/// as zero outside the grid.
pub fn convolve_with_phi(spec: &KernelSpec, p: &Grid) -> Result<Convolution> {
    if p.is_empty() {
        return Err(invalid("p", "empty grid"));
    }
    let conv = GridConvolver::phi(spec, p.step(), p.len());
    let fine = conv.apply(p.values());
    let coarse = conv.apply_coarse(p.values());
    let richardson = fine
        .iter()
        .zip(&coarse)
        .fold(0.0f64, |m, (f, c)| m.max((f - c).abs() / 3.0));
    let excess = (conv.abs_kernel_sum() - spec.c_phi()).max(0.0) * p.sup_norm();
    Ok(Convolution {
        grid: p.with_values(fine)?,
        quad_error: richardson + excess,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec2() -> KernelSpec {
        KernelSpec::new(2.0).unwrap()
    }

    #[test]
    fn value_at_origin() {
        let s = spec2();
        assert!((s.phi(0.0) - (1.0 + 0.5 / PI)).abs() < 1e-15);
        assert!((s.phi(0.0) - 1.159_154_943_091_895_3).abs() < 1e-15);
    }

    #[test]
    fn continuous_through_origin() {
        let s = spec2();
        assert!((s.phi(1e-12) - s.phi(0.0)).abs() < 1e-9);
        for &t in &[0.9e-6, 1.1e-6, 1e-5, 1e-3] {
            let taylor =
                phi_raw(0.5, 0.0) - ((PI + 1.0).powi(4) - PI.powi(4)) * t * t / (48.0 * PI * 0.5);
            assert!((s.phi(t) - taylor).abs() < 1e-9, "t = {t}");
        }
    }

    #[test]
    fn matches_high_precision_reference() {
        // 50-digit evaluation of the closed form at t = 3.7, lambda = 2.
        let s = spec2();
        assert!((s.phi(3.7) - 0.035_224_101_917_159_18).abs() < 1e-12);
    }

    #[test]
    fn derivative_vanishes_at_origin() {
        assert_eq!(spec2().phi_derivative(0.0), 0.0);
    }

    #[test]
    fn derivative_matches_central_difference() {
        let s = spec2();
        let h = 1e-6;
        let fd = (s.phi(1.0 + h) - s.phi(1.0 - h)) / (2.0 * h);
        assert!((s.phi_derivative(1.0) - fd).abs() < 1e-6);
    }

    #[test]
    fn derivative_matches_high_precision_reference() {
        let s = KernelSpec::new(1.5).unwrap();
        assert!((s.phi_derivative(2.3) - (-0.039_576_381_094_460_385)).abs() < 1e-12);
        assert_eq!(s.phi_derivative(-2.3), -s.phi_derivative(2.3));
    }

    #[test]
    fn rejects_lambda_at_most_one() {
        assert!(KernelSpec::new(1.0).is_err());
        assert!(KernelSpec::new(0.5).is_err());
        assert!(KernelSpec::new(f64::NAN).is_err());
    }

    #[test]
    fn constants_for_lambda_two() {
        let s = spec2();
        assert!((s.signed_integral() - 1.0).abs() < 1e-6);
        // Independent reference: Gauss-Legendre panels to R = 16000 with the
        // asymptotic tail, computed outside this crate.
        assert!((s.c_phi() - 1.793_844_35).abs() < 1e-6, "C = {}", s.c_phi());
        assert!(s.c_phi() > 1.0);
        let at_zero: f64 = (-2000..=2000)
            .map(|k| s.phi(-(k as f64) / 2.0).powi(2))
            .sum();
        assert!(s.c_phi_dprime() >= at_zero);
        // Squares of phi are bandlimited below 2 pi lambda, so the periodic
        // sum is flat and equals lambda * int phi^2 = lambda (1 + 2a / (3 pi)).
        let flat = 2.0 * (1.0 + 2.0 * 0.5 / (3.0 * PI));
        assert!(
            (s.c_phi_dprime() - flat).abs() < 1e-6,
            "C'' = {}",
            s.c_phi_dprime()
        );
        assert!(s.c_phi_prime().is_finite() && s.c_phi_prime() > 0.0);
    }

    #[test]
    fn constants_are_deterministic() {
        assert_eq!(KernelSpec::new(2.5).unwrap(), KernelSpec::new(2.5).unwrap());
    }

    #[test]
    fn c_prime_dominates_every_placement() {
        let s = spec2();
        // Cell midpoints and left edges are particular placements.
        for offset in [0.0, 0.25, 0.5] {
            let sum: f64 = (-40_000..40_000)
                .map(|k| s.phi_derivative((k as f64 + offset) / 2.0).abs())
                .sum();
            assert!(
                sum <= s.c_phi_prime(),
                "offset {offset}: {sum} > {}",
                s.c_phi_prime()
            );
        }
    }

    #[test]
    fn convolution_of_zero_is_zero() {
        let s = spec2();
        let p = Grid::zeros(0.0, s.default_step(), 200).unwrap();
        let c = convolve_with_phi(&s, &p).unwrap();
        assert!(c.grid.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn convolution_of_constant_has_unit_gain_in_interior() {
        let s = spec2();
        let step = 1.0 / 32.0;
        let half_width = 400.0;
        let n = (2.0 * half_width / step) as usize + 1;
        let p = Grid::from_fn(-half_width, step, n, |_| 1.0).unwrap();
        let c = convolve_with_phi(&s, &p).unwrap();
        let mid = n / 2;
        // Missing kernel mass beyond the grid edge: 2 / (pi a L).
        let truncation = 2.0 / (PI * s.a() * half_width);
        assert!((c.grid.values()[mid] - 1.0).abs() < truncation + c.quad_error);
        assert!((c.grid.values()[mid] - 1.0).abs() < 5e-3);
    }

    #[test]
    fn rejects_degenerate_grids() {
        assert!(Grid::new(0.0, 0.1, vec![1.0]).is_err());
        assert!(Grid::new(0.0, 0.0, vec![1.0, 2.0]).is_err());
        assert!(Grid::new(0.0, -1.0, vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn even_and_odd_symmetry() {
        let s = KernelSpec::new(3.0).unwrap();
        let mut x = 0.123_f64;
        for _ in 0..1000 {
            x = (x * 7919.0 + 0.311).fract();
            let t = 200.0 * (x - 0.5);
            assert!((s.phi(t) - s.phi(-t)).abs() <= 1e-12);
            assert!((s.phi_derivative(t) + s.phi_derivative(-t)).abs() <= 1e-12);
        }
    }
}

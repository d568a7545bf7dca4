//! Noise and dither model.
//!
//! The one-bit comparator sees `g + W + W_d`, where `W` is ambient noise and
//! `W_d` is dither sized so that the total standard deviation `sigma`
//! reaches a policy floor. With `f` the density of the total noise, the
//! map `m -> m - mu (F(m) - 1/2)` is a contraction after two
//! `phi`-convolutions whenever
//!
//! ```text
//! (1 - 1 / (sqrt(2) C^2)) / delta < mu < 1 / Delta,   delta = f(C), Delta = f(0)
//! ```
//!
//! and that window is nonempty once `sigma` exceeds a threshold `sigma_0`.

use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};
use statrs::function::erf::erfc;

use crate::error::{invalid, Error, Result};
use crate::kernel::KernelSpec;

/// Largest total standard deviation tried by [`solve_min_sigma`].
pub const SIGMA_SEARCH_LIMIT: f64 = 1e3;

/// Distribution of the total noise seen by the comparator.
pub trait NoiseDistribution {
    fn cdf(&self, x: f64) -> f64;
    fn pdf(&self, x: f64) -> f64;
    fn inverse_cdf(&self, p: f64) -> f64;
    /// One draw from a standard-normal variate `z`.
    ///
    /// Sample streams hand out standard normals; non-Gaussian laws map them
    /// through `inverse_cdf(Phi(z))`.
    fn transform_standard_normal(&self, z: f64) -> f64;
}

/// Zero-mean Gaussian with standard deviation `sigma > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gaussian {
    sigma: f64,
}

impl Gaussian {
    pub fn new(sigma: f64) -> Result<Self> {
        if sigma.is_finite() && sigma > 0.0 {
            Ok(Self { sigma })
        } else {
            Err(invalid(
                "sigma",
                format!("must be positive and finite, got {sigma}"),
            ))
        }
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

impl NoiseDistribution for Gaussian {
    fn cdf(&self, x: f64) -> f64 {
        0.5 * erfc(-x / (self.sigma * SQRT_2))
    }

    fn pdf(&self, x: f64) -> f64 {
        let z = x / self.sigma;
        (-0.5 * z * z).exp() / ((2.0 * PI).sqrt() * self.sigma)
    }

    fn inverse_cdf(&self, p: f64) -> f64 {
        Normal::new(0.0, self.sigma)
            .expect("sigma validated at construction")
            .inverse_cdf(p)
    }

    fn transform_standard_normal(&self, z: f64) -> f64 {
        self.sigma * z
    }
}

/// `(mu_lo, mu_hi)` for a Gaussian of standard deviation `sigma`.
fn mu_window(c_phi: f64, sigma: f64) -> (f64, f64, f64, f64) {
    let big_delta = 1.0 / ((2.0 * PI).sqrt() * sigma);
    let delta = big_delta * (-0.5 * c_phi * c_phi / (sigma * sigma)).exp();
    let lo = (1.0 - 1.0 / (SQRT_2 * c_phi * c_phi)) / delta;
    (lo, 1.0 / big_delta, delta, big_delta)
}

/// Smallest total standard deviation for which the `mu`-window is
/// nonempty, by bisection on the window width.
pub fn solve_min_sigma(kernel: &KernelSpec) -> Result<f64> {
    let c = kernel.c_phi();
    let width = |s: f64| {
        let (lo, hi, _, _) = mu_window(c, s);
        hi - lo
    };
    let mut hi = SIGMA_SEARCH_LIMIT;
    if !(width(hi) > 0.0) {
        return Err(Error::NoAdmissibleSigma(hi));
    }
    let mut lo = 1e-3;
    if width(lo) > 0.0 {
        return Ok(lo);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if width(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    Ok(hi)
}

/// Total noise, dither split and the contraction parameters derived from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    kernel: KernelSpec,
    sigma_w: f64,
    sigma_d: f64,
    dist: Gaussian,
    delta: f64,
    big_delta: f64,
    mu_lo: f64,
    mu_hi: f64,
    mu: f64,
}

/// The echo written into every result file.
#[derive(Debug, Clone, Serialize)]
pub struct ModelEcho {
    pub sigma_w: f64,
    pub sigma_d: f64,
    pub sigma_tot: f64,
    pub delta: f64,
    #[serde(rename = "Delta")]
    pub big_delta: f64,
    pub mu: f64,
    pub mu_window: [f64; 2],
    pub alpha: f64,
    pub beta: f64,
}

impl NoiseModel {
    /// Total deviation `max(sigma_w, sigma_floor_mult * sigma_0)`, dither
    /// making up the difference, `mu` at the window midpoint.
    pub fn build(kernel: &KernelSpec, sigma_w: f64, sigma_floor_mult: f64) -> Result<Self> {
        if !(sigma_floor_mult.is_finite() && sigma_floor_mult >= 1.0) {
            return Err(invalid(
                "sigma_floor_mult",
                format!("must be >= 1, got {sigma_floor_mult}"),
            ));
        }
        let sigma0 = solve_min_sigma(kernel)?;
        Self::with_total(kernel, sigma_w, sigma_w.max(sigma_floor_mult * sigma0))
    }

    /// Model with an explicit total deviation `sigma_tot >= sigma_w`.
    pub fn with_total(kernel: &KernelSpec, sigma_w: f64, sigma_tot: f64) -> Result<Self> {
        if !(sigma_w.is_finite() && sigma_w >= 0.0) {
            return Err(invalid("sigma_w", format!("must be >= 0, got {sigma_w}")));
        }
        if !(sigma_tot >= sigma_w) {
            return Err(invalid(
                "sigma_tot",
                format!("{sigma_tot} is below sigma_w = {sigma_w}"),
            ));
        }
        let dist = Gaussian::new(sigma_tot)?;
        let sigma_d = (sigma_tot * sigma_tot - sigma_w * sigma_w).max(0.0).sqrt();
        let (mu_lo, mu_hi, delta, big_delta) = mu_window(kernel.c_phi(), sigma_tot);
        Ok(Self {
            kernel: *kernel,
            sigma_w,
            sigma_d,
            dist,
            delta,
            big_delta,
            mu_lo,
            mu_hi,
            mu: 0.5 * (mu_lo + mu_hi),
        })
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    pub fn sigma_w(&self) -> f64 {
        self.sigma_w
    }

    pub fn sigma_d(&self) -> f64 {
        self.sigma_d
    }

    pub fn sigma_tot(&self) -> f64 {
        self.dist.sigma()
    }

    pub fn distribution(&self) -> &Gaussian {
        &self.dist
    }

    /// `f(C_phi)`.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// `f(0)`.
    pub fn big_delta(&self) -> f64 {
        self.big_delta
    }

    pub fn mu_window(&self) -> (f64, f64) {
        (self.mu_lo, self.mu_hi)
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn is_admissible(&self) -> bool {
        self.mu_lo < self.mu && self.mu < self.mu_hi
    }

    pub(crate) fn require_admissible(&self) -> Result<()> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(Error::InadmissibleModel(format!(
                "mu-window ({:.6}, {:.6}) is empty at sigma = {}",
                self.mu_lo,
                self.mu_hi,
                self.sigma_tot()
            )))
        }
    }

    /// Contraction factor `C^2 |1 - mu delta|` of the map `T`.
    pub fn alpha(&self) -> f64 {
        let c = self.kernel.c_phi();
        c * c * (1.0 - self.mu * self.delta).abs()
    }

    /// `2 C^4 |1 - mu delta|^2`, the contraction factor of the error recursion.
    pub fn beta(&self) -> f64 {
        2.0 * self.alpha() * self.alpha()
    }

    pub fn cdf(&self, x: f64) -> f64 {
        self.dist.cdf(x)
    }

    pub fn pdf(&self, x: f64) -> f64 {
        self.dist.pdf(x)
    }

    pub fn inverse_cdf(&self, p: f64) -> f64 {
        self.dist.inverse_cdf(p)
    }

    pub fn echo(&self) -> ModelEcho {
        ModelEcho {
            sigma_w: self.sigma_w,
            sigma_d: self.sigma_d,
            sigma_tot: self.sigma_tot(),
            delta: self.delta,
            big_delta: self.big_delta,
            mu: self.mu,
            mu_window: [self.mu_lo, self.mu_hi],
            alpha: self.alpha(),
            beta: self.beta(),
        }
    }
}

//! Reconstruction of bounded bandlimited signals from noisy samples, either
//! unquantized (frame estimator) or one-bit with dither (interpolation
//! followed by a contraction-mapping inversion), together with a Monte
//! Carlo harness that measures how the sup-pointwise mean-squared error
//! decays with the oversampling factor.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod harness;
pub mod kernel;
pub mod noise;
mod numeric;
pub mod par;
pub mod reconstruct;
mod rng;
pub mod sampling;
pub mod signal;

pub use error::{Error, Result};
pub use kernel::{
    compute_constants, convolve_with_phi, eval_phi, eval_phi_derivative, Grid, GridConvolver,
    KernelSpec,
};
pub use noise::{solve_min_sigma, Gaussian, NoiseDistribution, NoiseModel};
pub use reconstruct::{clip, constant_onebit_estimate, Method, OneBitIntermediate, Reconstruction};
pub use rng::derive_seed;
pub use sampling::{SampleRecord, Sampler};
pub use signal::{BandlimitedSignal, BoundedBlSignal};

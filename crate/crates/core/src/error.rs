use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("grid geometry mismatch: {0}")]
    GeometryMismatch(String),

    #[error("time {t} lies outside the signal window [{lo}, {hi}]")]
    OutsideWindow { t: f64, lo: f64, hi: f64 },

    #[error("sample record does not carry the {0} stream")]
    MissingStream(&'static str),

    #[error("noise model is not admissible: {0}")]
    InadmissibleModel(String),

    #[error(
        "fixed-point iteration did not converge in {iterations} iterations \
         (last residual {last_residual:.3e}, contraction bound {predicted_bound:.3e})"
    )]
    NonConvergence {
        iterations: usize,
        last_residual: f64,
        predicted_bound: f64,
    },

    #[error("no dither level up to sigma = {0} makes the mu-window nonempty")]
    NoAdmissibleSigma(f64),

    #[error("measurement failed: {failed} of {trials} trials did not converge")]
    TooManyFailures { failed: usize, trials: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}

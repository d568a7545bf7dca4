use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::reconstruct::Method;

/// Parameters of one N-sweep. JSON field names follow the struct, with
/// `K` and `N_list` capitalized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub lambda: f64,
    /// Number of random atoms in the test signal.
    #[serde(rename = "K")]
    pub k_atoms: usize,
    pub amplitude: f64,
    pub sigma_w: f64,
    pub sigma_floor_mult: f64,
    #[serde(rename = "N_list")]
    pub n_list: Vec<usize>,
    /// Monte Carlo trials per N.
    pub trials: usize,
    /// Reconstruction grid points per Nyquist interval `1 / lambda`.
    pub eval_grid_density: usize,
    /// Fixed-point tolerance; `0.01 / sqrt(N)` when absent.
    pub tol: Option<f64>,
    /// Fixed-point iteration cap; contraction-predicted when absent.
    pub max_iters: Option<usize>,
    pub seed: u64,
    /// Directory for `sweep.csv` and `sweep.json`.
    pub output: Option<PathBuf>,
    pub methods: Vec<Method>,
    /// Acceptance band for fitted slopes.
    pub slope_band: [f64; 2],
    /// Largest allowed max/min of the per-N onebit/frame distortion ratio.
    pub ratio_spread_max: f64,
    /// Start the fixed-point iteration from the frame estimate instead of zero.
    pub warm_start: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            lambda: 2.0,
            k_atoms: 64,
            amplitude: 0.9,
            sigma_w: 0.0,
            sigma_floor_mult: 1.1,
            n_list: vec![4, 8, 16, 32, 64, 128, 256],
            trials: 400,
            eval_grid_density: 4,
            tol: None,
            max_iters: None,
            seed: 2024,
            output: None,
            methods: vec![Method::Frame, Method::OneBit],
            slope_band: [-1.2, -0.8],
            ratio_spread_max: 2.5,
            warm_start: false,
        }
    }
}

impl ExperimentConfig {
    /// Configuration used by the distortion-law acceptance check: ambient
    /// noise on both paths and a larger `lambda`, so that the small-N end
    /// of the sweep is already in the asymptotic regime.
    pub fn acceptance() -> Self {
        Self {
            lambda: 6.0,
            sigma_w: 1.0,
            ..Self::default()
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda.is_finite() && self.lambda > 1.0) {
            return Err(invalid(
                "lambda",
                format!("must exceed 1, got {}", self.lambda),
            ));
        }
        if self.k_atoms < 16 {
            return Err(invalid(
                "K",
                format!("need at least 16, got {}", self.k_atoms),
            ));
        }
        if !(self.amplitude > 0.0 && self.amplitude <= 1.0) {
            return Err(invalid(
                "amplitude",
                format!("must lie in (0, 1], got {}", self.amplitude),
            ));
        }
        if !(self.sigma_w.is_finite() && self.sigma_w >= 0.0) {
            return Err(invalid(
                "sigma_w",
                format!("must be >= 0, got {}", self.sigma_w),
            ));
        }
        if !(self.sigma_floor_mult.is_finite() && self.sigma_floor_mult >= 1.0) {
            return Err(invalid("sigma_floor_mult", "must be >= 1"));
        }
        if self.n_list.is_empty() || self.n_list[0] == 0 {
            return Err(invalid("N_list", "must be nonempty with positive entries"));
        }
        if self.n_list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("N_list", "must be strictly increasing"));
        }
        if self.trials < 30 {
            return Err(invalid(
                "trials",
                format!("need at least 30, got {}", self.trials),
            ));
        }
        if self.eval_grid_density < 2 {
            return Err(invalid(
                "eval_grid_density",
                "need at least 2 points per interval",
            ));
        }
        if let Some(tol) = self.tol {
            if !(tol > 0.0) {
                return Err(invalid("tol", "must be positive"));
            }
        }
        if self.methods.is_empty() {
            return Err(invalid("methods", "need at least one method"));
        }
        if !(self.slope_band[0] < self.slope_band[1]) {
            return Err(invalid("slope_band", "lower edge must be below upper edge"));
        }
        if !(self.ratio_spread_max >= 1.0) {
            return Err(invalid("ratio_spread_max", "must be at least 1"));
        }
        Ok(())
    }

    pub fn has(&self, method: Method) -> bool {
        self.methods.contains(&method)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        ExperimentConfig::default().validate().unwrap();
        ExperimentConfig::acceptance().validate().unwrap();
    }

    #[test]
    fn json_round_trip_and_field_names() {
        let cfg = ExperimentConfig::default();
        let text = serde_json::to_string(&cfg).unwrap();
        assert!(text.contains("\"K\":64") && text.contains("\"N_list\""));
        assert_eq!(ExperimentConfig::from_json(&text).unwrap(), cfg);
    }

    #[test]
    fn partial_json_uses_defaults() {
        let cfg = ExperimentConfig::from_json(r#"{"lambda": 3.0, "trials": 50}"#).unwrap();
        assert_eq!(cfg.lambda, 3.0);
        assert_eq!(cfg.k_atoms, 64);
    }

    #[test]
    fn rejects_bad_configs() {
        for text in [
            r#"{"N_list": [8, 4]}"#,
            r#"{"trials": 10}"#,
            r#"{"lambda": 1.0}"#,
            r#"{"amplitude": 0.0}"#,
            r#"{"unknown": 1}"#,
        ] {
            assert!(ExperimentConfig::from_json(text).is_err(), "{text}");
        }
    }
}

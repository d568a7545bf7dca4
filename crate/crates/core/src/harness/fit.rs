use serde::Serialize;
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{invalid, Result};

/// Least-squares line through `(ln N, ln D)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    /// 95% confidence interval for the slope.
    pub ci: [f64; 2],
}

/// Fits `ln D = intercept + slope ln N` to `(N, D)` pairs.
pub fn fit_loglog_slope(rows: &[(f64, f64)]) -> Result<LogLogFit> {
    if rows.len() < 3 {
        return Err(invalid(
            "rows",
            format!("need at least 3 rows, got {}", rows.len()),
        ));
    }
    if let Some((n, d)) = rows.iter().find(|(n, d)| !(*n > 0.0) || !(*d > 0.0)) {
        return Err(invalid(
            "rows",
            format!("non-positive entry (N = {n}, D = {d})"),
        ));
    }
    let k = rows.len() as f64;
    let xs: Vec<f64> = rows.iter().map(|(n, _)| n.ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|(_, d)| d.ln()).collect();
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(invalid("rows", "all N identical"));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let sst: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let r2 = if sst > 0.0 { 1.0 - sse / sst } else { 1.0 };
    let df = k - 2.0;
    let se = (sse / df / sxx).sqrt();
    let t = StudentsT::new(0.0, 1.0, df)
        .map_err(|e| invalid("rows", e.to_string()))?
        .inverse_cdf(0.975);
    Ok(LogLogFit {
        slope,
        intercept,
        r2,
        ci: [slope - t * se, slope + t * se],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_laws() {
        let rows: Vec<_> = [4.0, 8.0, 16.0, 32.0]
            .iter()
            .map(|&n| (n, 3.0 / n))
            .collect();
        let fit = fit_loglog_slope(&rows).unwrap();
        assert!((fit.slope + 1.0).abs() < 1e-12);
        assert!((fit.r2 - 1.0).abs() < 1e-12);
        assert!((fit.intercept - 3f64.ln()).abs() < 1e-12);
        let rows: Vec<_> = [4.0, 8.0, 16.0]
            .iter()
            .map(|&n| (n, 1.0 / (n * n)))
            .collect();
        assert!((fit_loglog_slope(&rows).unwrap().slope + 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(fit_loglog_slope(&[(1.0, 1.0), (2.0, 0.5)]).is_err());
        assert!(fit_loglog_slope(&[(1.0, 1.0), (2.0, 0.0), (4.0, 0.2)]).is_err());
    }

    #[test]
    fn t_quantile_for_one_degree_of_freedom() {
        // With three points df = 1 and t_0.975 = 12.7062.
        let rows = [(1.0, 1.0), (2.0, 0.6), (4.0, 0.2)];
        let fit = fit_loglog_slope(&rows).unwrap();
        let half = 0.5 * (fit.ci[1] - fit.ci[0]);
        let xs: Vec<f64> = rows.iter().map(|r| r.0.ln()).collect();
        let mx = xs.iter().sum::<f64>() / 3.0;
        let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
        let sse: f64 = rows
            .iter()
            .map(|(n, d)| (d.ln() - fit.intercept - fit.slope * n.ln()).powi(2))
            .sum();
        let se = (sse / sxx).sqrt();
        assert!((half / se - 12.706_204_736).abs() < 1e-6);
    }
}

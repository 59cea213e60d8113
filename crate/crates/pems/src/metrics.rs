//! Regression error metrics: MSE, RMSE, MAE, MAPE, plus the min-max target
//! normalization used for the "normalized" leaderboard columns.
//!
//! MAPE divides by the actual value, so samples with |actual| below
//! [`MAPE_DENOMINATOR_FLOOR`] are excluded and counted instead of poisoning
//! the statistic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// |actual| below this is treated as a zero denominator for MAPE.
pub const MAPE_DENOMINATOR_FLOOR: f64 = 1e-8;

fn check_pair(pred: &[f64], actual: &[f64]) -> Result<()> {
    if pred.len() != actual.len() {
        return Err(Error::LengthMismatch {
            left: pred.len(),
            right: actual.len(),
        });
    }
    if pred.is_empty() {
        return Err(Error::EmptyInput("metric input"));
    }
    if !pred.iter().chain(actual.iter()).all(|v| v.is_finite()) {
        return Err(Error::NonFinite("metric input"));
    }
    Ok(())
}

/// Mean squared error: (1/n) Σ (ŷᵢ − yᵢ)².
pub fn mse(pred: &[f64], actual: &[f64]) -> Result<f64> {
    check_pair(pred, actual)?;
    let n = pred.len() as f64;
    let sum: f64 = pred
        .iter()
        .zip(actual)
        .map(|(p, a)| {
            let d = p - a;
            d * d
        })
        .sum();
    Ok(sum / n)
}

/// Root mean squared error: sqrt of [`mse`].
pub fn rmse(pred: &[f64], actual: &[f64]) -> Result<f64> {
    Ok(mse(pred, actual)?.sqrt())
}

/// Mean absolute error: (1/n) Σ |ŷᵢ − yᵢ|.
pub fn mae(pred: &[f64], actual: &[f64]) -> Result<f64> {
    check_pair(pred, actual)?;
    let n = pred.len() as f64;
    let sum: f64 = pred.iter().zip(actual).map(|(p, a)| (p - a).abs()).sum();
    Ok(sum / n)
}

/// Mean absolute percentage error over samples with a usable denominator.
///
/// Returns the percentage and the number of excluded samples
/// (|actual| < [`MAPE_DENOMINATOR_FLOOR`]). Errors if every sample is
/// excluded.
pub fn mape(pred: &[f64], actual: &[f64]) -> Result<(f64, usize)> {
    check_pair(pred, actual)?;
    let mut sum = 0.0;
    let mut used = 0usize;
    for (p, a) in pred.iter().zip(actual) {
        if a.abs() < MAPE_DENOMINATOR_FLOOR {
            continue;
        }
        sum += ((p - a) / a).abs();
        used += 1;
    }
    if used == 0 {
        return Err(Error::AllExcluded);
    }
    Ok((sum / used as f64 * 100.0, pred.len() - used))
}

/// All four metrics for one (prediction, actual) pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub mse: f64,
    pub rmse: f64,
    pub mae: f64,
    pub mape: f64,
    pub n_evaluated: usize,
    pub n_excluded_mape: usize,
}

impl MetricReport {
    pub fn compute(pred: &[f64], actual: &[f64]) -> Result<MetricReport> {
        let mse_v = mse(pred, actual)?;
        let (mape_v, excluded) = match mape(pred, actual) {
            Ok(pair) => pair,
            // All-zero targets: report NaN-free zero-information MAPE as 0
            // would be misleading; surface the exclusion count instead.
            Err(Error::AllExcluded) => (f64::NAN, pred.len()),
            Err(e) => return Err(e),
        };
        Ok(MetricReport {
            mse: mse_v,
            rmse: mse_v.sqrt(),
            mae: mae(pred, actual)?,
            mape: mape_v,
            n_evaluated: pred.len(),
            n_excluded_mape: excluded,
        })
    }

    /// CSV row: `model,target,mse,rmse,mae,mape,n,n_excluded`, metric values
    /// at five significant digits.
    pub fn to_csv_row(&self, model: &str, target: &str) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            model,
            target,
            format_sig(self.mse, 5),
            format_sig(self.rmse, 5),
            format_sig(self.mae, 5),
            format_sig(self.mape, 5),
            self.n_evaluated,
            self.n_excluded_mape
        )
    }

    pub const CSV_HEADER: &'static str = "model,target,mse,rmse,mae,mape,n,n_excluded";
}

/// Min-max normalizer fit on training-split targets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TargetNormalizer {
    pub y_min: f64,
    pub y_max: f64,
}

impl TargetNormalizer {
    pub fn fit(train_targets: &[f64]) -> Result<TargetNormalizer> {
        if train_targets.is_empty() {
            return Err(Error::EmptyInput("normalizer targets"));
        }
        let y_min = train_targets.iter().cloned().fold(f64::INFINITY, f64::min);
        let y_max = train_targets
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max);
        if y_max <= y_min {
            return Err(Error::DegenerateNormalizer);
        }
        Ok(TargetNormalizer { y_min, y_max })
    }

    pub fn normalize(&self, y: &[f64]) -> Vec<f64> {
        let range = self.y_max - self.y_min;
        y.iter().map(|v| (v - self.y_min) / range).collect()
    }

    /// Metrics on min-max normalized prediction/actual pairs.
    pub fn evaluate_normalized(&self, pred: &[f64], actual: &[f64]) -> Result<MetricReport> {
        MetricReport::compute(&self.normalize(pred), &self.normalize(actual))
    }
}

/// Format with `sig` significant digits as plain decimal.
pub fn format_sig(v: f64, sig: usize) -> String {
    if !v.is_finite() {
        return "NaN".to_string();
    }
    if v == 0.0 {
        return "0".to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    let scale = 10f64.powi(exp - sig as i32 + 1);
    let rounded = (v / scale).round() * scale;
    // rounding can carry into the next decade (0.99999 -> 1.0000)
    let exp = rounded.abs().log10().floor() as i32;
    let decimals = (sig as i32 - 1 - exp).max(0) as usize;
    format!("{:.*}", decimals, rounded)
}

//! Dataset ingestion, synthetic turbine data, chronological splitting,
//! standardization, and sequence windowing.
//!
//! A [`Dataset`] is a time-ordered frame of named numeric feature columns
//! plus one target column. Rows containing non-finite values are dropped at
//! ingestion and counted. Splits are chronological (no shuffling): the data
//! is a time series.

mod csv_io;
mod synthetic;

pub use csv_io::{load_csv, save_csv};
pub use synthetic::{generate_synthetic, ground_truth_series, SyntheticSpec, TargetKind};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    feature_names: Vec<String>,
    features: Matrix,
    target_name: String,
    target: Vec<f64>,
    time_ordered: bool,
    dropped_rows: usize,
}

impl Dataset {
    /// Assemble a dataset, checking the type invariants: equal column
    /// lengths, at least one row, and no non-finite values.
    pub fn new(
        feature_names: Vec<String>,
        features: Matrix,
        target_name: String,
        target: Vec<f64>,
    ) -> Result<Dataset> {
        if features.rows() == 0 {
            return Err(Error::EmptyInput("dataset rows"));
        }
        if feature_names.len() != features.cols() {
            return Err(Error::DimensionMismatch(format!(
                "{} feature names for {} columns",
                feature_names.len(),
                features.cols()
            )));
        }
        if target.len() != features.rows() {
            return Err(Error::LengthMismatch {
                left: target.len(),
                right: features.rows(),
            });
        }
        if !features.is_finite() || !target.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("dataset"));
        }
        Ok(Dataset {
            feature_names,
            features,
            target_name,
            target,
            time_ordered: true,
            dropped_rows: 0,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.features.rows()
    }

    pub fn n_features(&self) -> usize {
        self.features.cols()
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn features(&self) -> &Matrix {
        &self.features
    }

    pub fn target(&self) -> &[f64] {
        &self.target
    }

    pub fn target_name(&self) -> &str {
        &self.target_name
    }

    pub fn is_time_ordered(&self) -> bool {
        self.time_ordered
    }

    /// Rows dropped at ingestion because they contained NaN/Inf.
    pub fn dropped_rows(&self) -> usize {
        self.dropped_rows
    }

    pub(crate) fn set_dropped_rows(&mut self, n: usize) {
        self.dropped_rows = n;
    }

    /// Contiguous row slice `[start, end)` as a new dataset.
    pub fn slice_rows(&self, start: usize, end: usize) -> Dataset {
        assert!(start < end && end <= self.n_rows());
        let idx: Vec<usize> = (start..end).collect();
        Dataset {
            feature_names: self.feature_names.clone(),
            features: self.features.take_rows(&idx),
            target_name: self.target_name.clone(),
            target: self.target[start..end].to_vec(),
            time_ordered: self.time_ordered,
            dropped_rows: 0,
        }
    }

    /// Replace the feature matrix, keeping names and target. The caller
    /// guarantees the replacement is row-aligned (used by scaling).
    fn with_features(&self, features: Matrix) -> Dataset {
        assert_eq!(features.rows(), self.n_rows());
        assert_eq!(features.cols(), self.n_features());
        Dataset {
            feature_names: self.feature_names.clone(),
            features,
            target_name: self.target_name.clone(),
            target: self.target.clone(),
            time_ordered: self.time_ordered,
            dropped_rows: self.dropped_rows,
        }
    }
}

/// Chronological three-way split. Validation and test sizes are floor
/// allocations `floor(n * ratio)`; the remainder goes to train, so the
/// train block is the prefix, validation the middle, test the suffix.
pub fn chronological_split(
    ds: &Dataset,
    ratios: (f64, f64, f64),
) -> Result<(Dataset, Dataset, Dataset)> {
    let (r_train, r_val, r_test) = ratios;
    if !(r_train > 0.0 && r_val > 0.0 && r_test > 0.0) {
        return Err(Error::InvalidSplit("ratios must be positive".into()));
    }
    let sum = r_train + r_val + r_test;
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidSplit(format!("ratios sum to {sum}, expected 1")));
    }
    let n = ds.n_rows();
    let n_val = (n as f64 * r_val).floor() as usize;
    let n_test = (n as f64 * r_test).floor() as usize;
    let n_train = n - n_val - n_test;
    if n_train == 0 {
        return Err(Error::EmptySplit("train"));
    }
    if n_val == 0 {
        return Err(Error::EmptySplit("val"));
    }
    if n_test == 0 {
        return Err(Error::EmptySplit("test"));
    }
    Ok((
        ds.slice_rows(0, n_train),
        ds.slice_rows(n_train, n_train + n_val),
        ds.slice_rows(n_train + n_val, n),
    ))
}

/// Per-feature standardizer: z = (x - u) / s, with population-formula
/// standard deviation (divide by n).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scaler {
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
    pub feature_names: Vec<String>,
    pub fitted_on: usize,
}

/// Fit on the training split only. Zero-variance columns get s = 1 so the
/// transformed column is all zeros; a warning is logged.
pub fn fit_scaler(train: &Dataset) -> Scaler {
    let n = train.n_rows();
    let d = train.n_features();
    let x = train.features();
    let mut means = vec![0.0; d];
    let mut stds = vec![0.0; d];
    for row in x.row_iter() {
        for (j, v) in row.iter().enumerate() {
            means[j] += v;
        }
    }
    for m in means.iter_mut() {
        *m /= n as f64;
    }
    for row in x.row_iter() {
        for (j, v) in row.iter().enumerate() {
            let c = v - means[j];
            stds[j] += c * c;
        }
    }
    for (j, s) in stds.iter_mut().enumerate() {
        *s = (*s / n as f64).sqrt();
        if *s <= 0.0 {
            log::warn!(
                "feature '{}' has zero variance on the training split; scaling guarded to 1",
                train.feature_names()[j]
            );
            *s = 1.0;
        }
    }
    Scaler {
        means,
        stds,
        feature_names: train.feature_names().to_vec(),
        fitted_on: n,
    }
}

pub fn apply_scaler(scaler: &Scaler, ds: &Dataset) -> Result<Dataset> {
    if scaler.feature_names != ds.feature_names() {
        return Err(Error::SchemaMismatch {
            expected: scaler.feature_names.clone(),
            got: ds.feature_names().to_vec(),
        });
    }
    let mut features = ds.features().clone();
    for i in 0..features.rows() {
        let row = features.row_mut(i);
        for (j, v) in row.iter_mut().enumerate() {
            *v = (*v - scaler.means[j]) / scaler.stds[j];
        }
    }
    Ok(ds.with_features(features))
}

impl Scaler {
    /// Inverse transform: x = z * s + u.
    pub fn inverse_row(&self, z: &[f64]) -> Vec<f64> {
        z.iter()
            .enumerate()
            .map(|(j, v)| v * self.stds[j] + self.means[j])
            .collect()
    }
}

/// Overlapping fixed-length windows over a time-ordered dataset. Window `i`
/// covers rows `[i, i+w)`; its target is the target at row `i+w-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceDataset {
    pub windows: Vec<Matrix>,
    pub targets: Vec<f64>,
    pub window_len: usize,
}

impl SequenceDataset {
    pub fn len(&self) -> usize {
        self.windows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.windows.is_empty()
    }
}

pub fn make_windows(ds: &Dataset, w: usize) -> Result<SequenceDataset> {
    if w == 0 {
        return Err(Error::Config("window length must be at least 1".into()));
    }
    let n = ds.n_rows();
    if w > n {
        return Err(Error::WindowTooLong { window: w, rows: n });
    }
    let d = ds.n_features();
    let x = ds.features();
    let mut windows = Vec::with_capacity(n - w + 1);
    let mut targets = Vec::with_capacity(n - w + 1);
    for i in 0..=n - w {
        let mut m = Matrix::zeros(w, d);
        for t in 0..w {
            m.row_mut(t).copy_from_slice(x.row(i + t));
        }
        windows.push(m);
        targets.push(ds.target()[i + w - 1]);
    }
    Ok(SequenceDataset {
        windows,
        targets,
        window_len: w,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn toy(n: usize) -> Dataset {
        let names = vec!["p1".to_string(), "t1".to_string()];
        let mut rows = Vec::new();
        for i in 0..n {
            rows.push(vec![i as f64, (i * i) as f64]);
        }
        let target: Vec<f64> = (0..n).map(|i| 10.0 * i as f64).collect();
        Dataset::new(names, Matrix::from_rows(&rows), "co".into(), target).unwrap()
    }

    #[test]
    fn split_exact_arithmetic() {
        let ds = toy(100);
        let (tr, va, te) = chronological_split(&ds, (0.7, 0.15, 0.15)).unwrap();
        assert_eq!((tr.n_rows(), va.n_rows(), te.n_rows()), (70, 15, 15));
    }

    #[test]
    fn split_remainder_goes_to_train() {
        let ds = toy(10);
        let (tr, va, te) = chronological_split(&ds, (0.5, 0.25, 0.25)).unwrap();
        // floor allocations for val/test, remainder to train
        assert_eq!((tr.n_rows(), va.n_rows(), te.n_rows()), (6, 2, 2));
    }

    #[test]
    fn split_empty_is_error() {
        let ds = toy(3);
        assert!(matches!(
            chronological_split(&ds, (0.98, 0.01, 0.01)),
            Err(Error::EmptySplit(_))
        ));
    }

    #[test]
    fn split_is_a_partition() {
        let ds = toy(53);
        let (tr, va, te) = chronological_split(&ds, (0.6, 0.2, 0.2)).unwrap();
        let mut glued: Vec<f64> = Vec::new();
        for part in [&tr, &va, &te] {
            glued.extend(part.target().iter());
        }
        assert_eq!(glued, ds.target());
        assert_eq!(tr.n_rows() + va.n_rows() + te.n_rows(), ds.n_rows());
        // features preserved row-for-row across the boundary
        assert_eq!(va.features().row(0), ds.features().row(tr.n_rows()));
    }

    #[test]
    fn scaler_definition_and_guard() {
        let names = vec!["a".to_string(), "c".to_string()];
        let rows = vec![
            vec![2.0, 5.0],
            vec![4.0, 5.0],
            vec![6.0, 5.0],
        ];
        let ds = Dataset::new(names, Matrix::from_rows(&rows), "y".into(), vec![0.0; 3]).unwrap();
        let sc = fit_scaler(&ds);
        assert_eq!(sc.means[0], 4.0);
        // population std of [2,4,6]
        let expect = ((4.0 + 0.0 + 4.0) / 3.0f64).sqrt();
        assert!((sc.stds[0] - expect).abs() < 1e-12);
        // constant column guarded to 1
        assert_eq!(sc.stds[1], 1.0);

        let z = apply_scaler(&sc, &ds).unwrap();
        let col0 = z.features().column(0);
        let mean: f64 = col0.iter().sum::<f64>() / 3.0;
        let var: f64 = col0.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / 3.0;
        assert!(mean.abs() < 1e-9);
        assert!((var.sqrt() - 1.0).abs() < 1e-9);
        // constant column transformed to all zeros
        assert!(z.features().column(1).iter().all(|v| *v == 0.0));
    }

    #[test]
    fn scaler_schema_mismatch() {
        let ds = toy(5);
        let sc = fit_scaler(&ds);
        let other = Dataset::new(
            vec!["x".into(), "y".into()],
            Matrix::from_rows(&[vec![1.0, 2.0]]),
            "co".into(),
            vec![0.0],
        )
        .unwrap();
        assert!(matches!(
            apply_scaler(&sc, &other),
            Err(Error::SchemaMismatch { .. })
        ));
    }

    #[test]
    fn scaler_roundtrip_recovers_originals() {
        let ds = toy(20);
        let (tr, _va, te) = chronological_split(&ds, (0.6, 0.2, 0.2)).unwrap();
        let sc = fit_scaler(&tr);
        let z = apply_scaler(&sc, &te).unwrap();
        for i in 0..te.n_rows() {
            let back = sc.inverse_row(z.features().row(i));
            for (b, o) in back.iter().zip(te.features().row(i)) {
                let rel = (b - o).abs() / o.abs().max(1.0);
                assert!(rel < 1e-12, "roundtrip error {rel}");
            }
        }
    }

    #[test]
    fn windows_by_construction() {
        let ds = toy(5);
        let sd = make_windows(&ds, 2).unwrap();
        assert_eq!(sd.len(), 4);
        assert_eq!(sd.windows[0].row(0), ds.features().row(0));
        assert_eq!(sd.windows[0].row(1), ds.features().row(1));
        assert_eq!(sd.targets[0], ds.target()[1]);
        assert_eq!(sd.targets[3], ds.target()[4]);
    }

    #[test]
    fn window_of_one_is_rowwise() {
        let ds = toy(4);
        let sd = make_windows(&ds, 1).unwrap();
        assert_eq!(sd.len(), 4);
        for i in 0..4 {
            assert_eq!(sd.windows[i].row(0), ds.features().row(i));
            assert_eq!(sd.targets[i], ds.target()[i]);
        }
    }

    #[test]
    fn window_too_long_is_error() {
        let ds = toy(3);
        assert!(matches!(
            make_windows(&ds, 5),
            Err(Error::WindowTooLong { window: 5, rows: 3 })
        ));
    }

    proptest! {
        #[test]
        fn window_count_formula(n in 1usize..200, w_raw in 1usize..200) {
            let w = (w_raw % n) + 1; // 1 <= w <= n
            let ds = toy(n);
            let sd = make_windows(&ds, w).unwrap();
            prop_assert_eq!(sd.len(), n - w + 1);
            prop_assert!(sd.windows.iter().all(|m| m.rows() == w));
        }
    }
}

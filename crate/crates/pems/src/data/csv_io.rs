//! CSV ingestion and emission: comma-separated, header row, UTF-8,
//! '.' decimal point. Floats are written in shortest round-trip form.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

use super::Dataset;

/// Load a dataset from CSV. `feature_names` selects and orders the feature
/// columns; when absent, every non-target column is used in header order.
///
/// Cells that fail numeric parsing are hard errors; rows that parse to
/// NaN/Inf are dropped and counted.
pub fn load_csv(
    path: &Path,
    target_name: &str,
    feature_names: Option<&[String]>,
) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)?;
    let headers: Vec<String> = reader.headers()?.iter().map(|h| h.to_string()).collect();

    let target_idx = headers
        .iter()
        .position(|h| h == target_name)
        .ok_or_else(|| Error::MissingTarget(target_name.to_string()))?;

    let selected: Vec<(String, usize)> = match feature_names {
        Some(names) => {
            let mut out = Vec::with_capacity(names.len());
            for name in names {
                let idx = headers
                    .iter()
                    .position(|h| h == name)
                    .ok_or_else(|| Error::MissingTarget(name.clone()))?;
                out.push((name.clone(), idx));
            }
            out
        }
        None => headers
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != target_idx)
            .map(|(i, h)| (h.clone(), i))
            .collect(),
    };

    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut targets: Vec<f64> = Vec::new();
    let mut dropped = 0usize;

    for (row_no, record) in reader.records().enumerate() {
        let record = record?;
        let mut row = Vec::with_capacity(selected.len());
        let mut finite = true;
        for (name, idx) in &selected {
            let cell = record.get(*idx).unwrap_or("");
            let v: f64 = cell.parse().map_err(|_| Error::NonNumericCell {
                column: name.clone(),
                row: row_no + 1,
                value: cell.to_string(),
            })?;
            finite &= v.is_finite();
            row.push(v);
        }
        let cell = record.get(target_idx).unwrap_or("");
        let y: f64 = cell.parse().map_err(|_| Error::NonNumericCell {
            column: target_name.to_string(),
            row: row_no + 1,
            value: cell.to_string(),
        })?;
        finite &= y.is_finite();

        if finite {
            rows.push(row);
            targets.push(y);
        } else {
            dropped += 1;
        }
    }

    if rows.is_empty() {
        return Err(Error::NoUsableRows);
    }

    let names: Vec<String> = selected.into_iter().map(|(n, _)| n).collect();
    let mut ds = Dataset::new(
        names,
        Matrix::from_rows(&rows),
        target_name.to_string(),
        targets,
    )?;
    ds.set_dropped_rows(dropped);
    Ok(ds)
}

/// Write a dataset as CSV, features first and the target column last.
pub fn save_csv(ds: &Dataset, path: &Path) -> Result<()> {
    let file = File::create(path)?;
    let mut out = BufWriter::new(file);
    let mut header: Vec<&str> = ds.feature_names().iter().map(|s| s.as_str()).collect();
    header.push(ds.target_name());
    writeln!(out, "{}", header.join(","))?;
    for i in 0..ds.n_rows() {
        let mut cells: Vec<String> = ds.features().row(i).iter().map(|v| v.to_string()).collect();
        cells.push(ds.target()[i].to_string());
        writeln!(out, "{}", cells.join(","))?;
    }
    out.flush()?;
    Ok(())
}

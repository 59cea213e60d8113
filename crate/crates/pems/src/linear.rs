//! Elastic-net linear regression fit by cyclic coordinate descent with
//! soft-thresholding.
//!
//! Minimizes `(1/2n)‖y − Xw − b‖² + α·l1_ratio·‖w‖₁ + ½α(1−l1_ratio)‖w‖²`
//! with an unpenalized intercept updated every sweep. Expects standardized
//! features (a warning is logged otherwise); the objective is checked to be
//! non-increasing per sweep in debug builds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElasticNetConfig {
    pub alpha: f64,
    pub l1_ratio: f64,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for ElasticNetConfig {
    fn default() -> Self {
        ElasticNetConfig {
            alpha: 0.1,
            l1_ratio: 0.1,
            tol: 1e-6,
            max_iter: 10_000,
        }
    }
}

impl ElasticNetConfig {
    fn validate(&self) -> Result<()> {
        if self.alpha < 0.0 {
            return Err(Error::Config("alpha must be non-negative".into()));
        }
        if !(0.0..=1.0).contains(&self.l1_ratio) {
            return Err(Error::Config("l1_ratio must lie in [0, 1]".into()));
        }
        if self.tol <= 0.0 {
            return Err(Error::Config("tol must be positive".into()));
        }
        if self.max_iter == 0 {
            return Err(Error::Config("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub weights: Vec<f64>,
    pub intercept: f64,
    pub converged: bool,
    pub iterations: usize,
    pub config: ElasticNetConfig,
}

#[inline]
fn soft_threshold(v: f64, t: f64) -> f64 {
    if v > t {
        v - t
    } else if v < -t {
        v + t
    } else {
        0.0
    }
}

pub fn fit_elastic_net(x: &Matrix, y: &[f64], cfg: &ElasticNetConfig) -> Result<LinearModel> {
    cfg.validate()?;
    let n = x.rows();
    let d = x.cols();
    if n != y.len() {
        return Err(Error::LengthMismatch {
            left: n,
            right: y.len(),
        });
    }
    if n < 2 {
        return Err(Error::EmptyInput("elastic net needs at least 2 rows"));
    }
    if !x.is_finite() || !y.iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite("elastic net input"));
    }
    warn_if_unstandardized(x);

    let nf = n as f64;
    // per-column mean squares, fixed across sweeps
    let mut col_sq = vec![0.0; d];
    for row in x.row_iter() {
        for (j, v) in row.iter().enumerate() {
            col_sq[j] += v * v;
        }
    }
    for c in col_sq.iter_mut() {
        *c /= nf;
    }

    let l1_penalty = cfg.alpha * cfg.l1_ratio;
    let l2_penalty = cfg.alpha * (1.0 - cfg.l1_ratio);

    let mut weights = vec![0.0; d];
    let mut intercept = 0.0;
    // residual r = y - Xw - b
    let mut residual: Vec<f64> = y.to_vec();

    let mut converged = false;
    let mut iterations = 0;
    #[cfg(debug_assertions)]
    let mut prev_obj = f64::INFINITY;

    for sweep in 0..cfg.max_iter {
        iterations = sweep + 1;
        let mut max_update = 0.0f64;

        // unpenalized intercept: exact minimizer given current weights
        let shift = residual.iter().sum::<f64>() / nf;
        if shift != 0.0 {
            intercept += shift;
            for r in residual.iter_mut() {
                *r -= shift;
            }
            max_update = max_update.max(shift.abs());
        }

        for j in 0..d {
            let denom = col_sq[j] + l2_penalty;
            if denom <= 0.0 {
                continue;
            }
            let w_old = weights[j];
            let mut rho = 0.0;
            for i in 0..n {
                rho += x.get(i, j) * residual[i];
            }
            rho = rho / nf + w_old * col_sq[j];
            let w_new = soft_threshold(rho, l1_penalty) / denom;
            if w_new != w_old {
                let delta = w_new - w_old;
                for i in 0..n {
                    residual[i] -= delta * x.get(i, j);
                }
                weights[j] = w_new;
                max_update = max_update.max(delta.abs());
            }
        }

        #[cfg(debug_assertions)]
        {
            let obj = objective(&residual, &weights, l1_penalty, l2_penalty, nf);
            debug_assert!(
                obj <= prev_obj + 1e-10 * prev_obj.abs().max(1.0),
                "objective increased: {prev_obj} -> {obj}"
            );
            prev_obj = obj;
        }

        if max_update < cfg.tol {
            converged = true;
            break;
        }
    }

    if !weights.iter().all(|w| w.is_finite()) || !intercept.is_finite() {
        return Err(Error::Train("elastic net produced non-finite weights".into()));
    }

    Ok(LinearModel {
        weights,
        intercept,
        converged,
        iterations,
        config: *cfg,
    })
}

#[cfg(debug_assertions)]
fn objective(residual: &[f64], weights: &[f64], l1: f64, l2: f64, n: f64) -> f64 {
    let sse: f64 = residual.iter().map(|r| r * r).sum();
    let w1: f64 = weights.iter().map(|w| w.abs()).sum();
    let w2: f64 = weights.iter().map(|w| w * w).sum();
    sse / (2.0 * n) + l1 * w1 + 0.5 * l2 * w2
}

fn warn_if_unstandardized(x: &Matrix) {
    let n = x.rows() as f64;
    for j in 0..x.cols() {
        let col = x.column(j);
        let mean = col.iter().sum::<f64>() / n;
        let var = col.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        if mean.abs() > 1.0 || (var > 0.0 && !(0.01..=100.0).contains(&var)) {
            log::warn!(
                "feature column {j} does not look standardized (mean {mean:.3}, var {var:.3})"
            );
            return;
        }
    }
}

pub fn predict_linear(model: &LinearModel, x: &Matrix) -> Result<Vec<f64>> {
    if x.cols() != model.weights.len() {
        return Err(Error::DimensionMismatch(format!(
            "model has {} weights, input has {} columns",
            model.weights.len(),
            x.cols()
        )));
    }
    Ok(x.row_iter()
        .map(|row| crate::matrix::dot(row, &model.weights) + model.intercept)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::solve_dense;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_instance(seed: u64, n: usize, d: usize) -> (Matrix, Vec<f64>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x = Matrix::zeros(n, d);
        for i in 0..n {
            for j in 0..d {
                x.set(i, j, rng.gen_range(-1.5..1.5));
            }
        }
        let w_true: Vec<f64> = (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let y: Vec<f64> = (0..n)
            .map(|i| crate::matrix::dot(x.row(i), &w_true) + 0.5 + rng.gen_range(-0.05..0.05))
            .collect();
        (x, y)
    }

    /// Least squares with intercept via the normal equations on the
    /// augmented design matrix; independent of coordinate descent.
    fn normal_equations(x: &Matrix, y: &[f64]) -> (Vec<f64>, f64) {
        let n = x.rows();
        let d = x.cols();
        let mut aug = Matrix::zeros(n, d + 1);
        for i in 0..n {
            aug.row_mut(i)[..d].copy_from_slice(x.row(i));
            aug.set(i, d, 1.0);
        }
        let mut gram = Matrix::zeros(d + 1, d + 1);
        aug.matmul_tn_acc(&aug, &mut gram);
        let mut rhs = vec![0.0; d + 1];
        for i in 0..n {
            for j in 0..=d {
                rhs[j] += aug.get(i, j) * y[i];
            }
        }
        let sol = solve_dense(&gram, &rhs).unwrap();
        (sol[..d].to_vec(), sol[d])
    }

    #[test]
    fn alpha_zero_matches_normal_equations() {
        let (x, y) = random_instance(42, 50, 5);
        let cfg = ElasticNetConfig {
            alpha: 0.0,
            l1_ratio: 0.0,
            tol: 1e-12,
            max_iter: 100_000,
        };
        let model = fit_elastic_net(&x, &y, &cfg).unwrap();
        assert!(model.converged);
        let (w_ref, b_ref) = normal_equations(&x, &y);
        for (w, r) in model.weights.iter().zip(&w_ref) {
            assert!((w - r).abs() < 1e-6, "weight {w} vs oracle {r}");
        }
        assert!((model.intercept - b_ref).abs() < 1e-6);
    }

    #[test]
    fn exact_linear_data_recovered() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut x = Matrix::zeros(30, 3);
        for i in 0..30 {
            for j in 0..3 {
                x.set(i, j, rng.gen_range(-1.0..1.0));
            }
        }
        let w_true = [1.5, -2.0, 0.25];
        let y: Vec<f64> = (0..30)
            .map(|i| crate::matrix::dot(x.row(i), &w_true) - 0.75)
            .collect();
        let cfg = ElasticNetConfig {
            alpha: 0.0,
            l1_ratio: 0.0,
            tol: 1e-12,
            max_iter: 100_000,
        };
        let model = fit_elastic_net(&x, &y, &cfg).unwrap();
        for (w, t) in model.weights.iter().zip(&w_true) {
            assert!((w - t).abs() < 1e-6);
        }
        assert!((model.intercept + 0.75).abs() < 1e-6);
    }

    #[test]
    fn total_shrinkage_zeroes_weights() {
        let (x, y) = random_instance(7, 40, 4);
        let cfg = ElasticNetConfig {
            alpha: 1e6,
            l1_ratio: 1.0,
            tol: 1e-10,
            max_iter: 1000,
        };
        let model = fit_elastic_net(&x, &y, &cfg).unwrap();
        assert!(model.weights.iter().all(|w| *w == 0.0));
        let mean_y = y.iter().sum::<f64>() / y.len() as f64;
        assert!((model.intercept - mean_y).abs() < 1e-9);
    }

    #[test]
    fn ridge_matches_closed_form() {
        let (x, y) = random_instance(23, 60, 4);
        let alpha = 0.3;
        let cfg = ElasticNetConfig {
            alpha,
            l1_ratio: 0.0,
            tol: 1e-12,
            max_iter: 200_000,
        };
        let model = fit_elastic_net(&x, &y, &cfg).unwrap();

        // closed form on centered data: (Xc'Xc/n + alpha I) w = Xc'yc / n
        let n = x.rows();
        let d = x.cols();
        let nf = n as f64;
        let mean_y = y.iter().sum::<f64>() / nf;
        let mut mean_x = vec![0.0; d];
        for row in x.row_iter() {
            for (j, v) in row.iter().enumerate() {
                mean_x[j] += v / nf;
            }
        }
        let mut gram = Matrix::zeros(d, d);
        let mut rhs = vec![0.0; d];
        for i in 0..n {
            for j in 0..d {
                let xj = x.get(i, j) - mean_x[j];
                rhs[j] += xj * (y[i] - mean_y) / nf;
                for k in 0..d {
                    let xk = x.get(i, k) - mean_x[k];
                    let v = gram.get(j, k) + xj * xk / nf;
                    gram.set(j, k, v);
                }
            }
        }
        for j in 0..d {
            let v = gram.get(j, j) + alpha;
            gram.set(j, j, v);
        }
        let w_ref = solve_dense(&gram, &rhs).unwrap();
        let b_ref = mean_y - crate::matrix::dot(&mean_x, &w_ref);
        for (w, r) in model.weights.iter().zip(&w_ref) {
            assert!((w - r).abs() < 1e-6, "ridge weight {w} vs {r}");
        }
        assert!((model.intercept - b_ref).abs() < 1e-6);
    }

    #[test]
    fn l1_norm_shrinks_with_alpha() {
        let (x, y) = random_instance(5, 80, 6);
        let mut prev = f64::INFINITY;
        for alpha in [0.0, 0.01, 0.1, 0.5, 1.0, 10.0] {
            let cfg = ElasticNetConfig {
                alpha,
                l1_ratio: 0.7,
                tol: 1e-10,
                max_iter: 100_000,
            };
            let model = fit_elastic_net(&x, &y, &cfg).unwrap();
            let l1: f64 = model.weights.iter().map(|w| w.abs()).sum();
            assert!(l1 <= prev + 1e-8, "l1 norm grew: {l1} > {prev} at alpha {alpha}");
            prev = l1;
        }
    }

    #[test]
    fn predict_basics() {
        let model = LinearModel {
            weights: vec![0.0, 0.0],
            intercept: 3.0,
            converged: true,
            iterations: 1,
            config: ElasticNetConfig::default(),
        };
        let x = Matrix::from_rows(&[vec![1.0, 2.0], vec![-5.0, 0.5]]);
        assert_eq!(predict_linear(&model, &x).unwrap(), vec![3.0, 3.0]);

        let model = LinearModel {
            weights: vec![1.0, -1.0],
            intercept: 0.0,
            converged: true,
            iterations: 1,
            config: ElasticNetConfig::default(),
        };
        let x = Matrix::from_rows(&[vec![4.0, 1.0]]);
        assert_eq!(predict_linear(&model, &x).unwrap(), vec![3.0]);
    }

    #[test]
    fn predictions_are_affine() {
        let model = LinearModel {
            weights: vec![2.0, -0.5, 1.0],
            intercept: 1.25,
            converged: true,
            iterations: 1,
            config: ElasticNetConfig::default(),
        };
        let x1 = [0.5, 2.0, -1.0];
        let x2 = [1.5, -0.25, 3.0];
        let sum: Vec<f64> = x1.iter().zip(&x2).map(|(a, b)| a + b).collect();
        let m = Matrix::from_rows(&[x1.to_vec(), x2.to_vec(), sum]);
        let p = predict_linear(&model, &m).unwrap();
        assert!((p[2] - (p[0] + p[1] - model.intercept)).abs() < 1e-12);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let model = LinearModel {
            weights: vec![1.0],
            intercept: 0.0,
            converged: true,
            iterations: 1,
            config: ElasticNetConfig::default(),
        };
        let x = Matrix::from_rows(&[vec![1.0, 2.0]]);
        assert!(predict_linear(&model, &x).is_err());
    }

    #[test]
    fn empty_and_nonfinite_inputs_rejected() {
        let cfg = ElasticNetConfig::default();
        let x = Matrix::from_rows(&[vec![1.0]]);
        assert!(fit_elastic_net(&x, &[1.0], &cfg).is_err());

        let x = Matrix::from_rows(&[vec![1.0], vec![f64::NAN]]);
        assert!(matches!(
            fit_elastic_net(&x, &[1.0, 2.0], &cfg),
            Err(Error::NonFinite(_))
        ));
    }
}

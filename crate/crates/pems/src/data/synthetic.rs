//! Synthetic gas-turbine sensor data.
//!
//! The generator simulates a turbine moving through distinct operating
//! regimes. Three slow latent processes (load, ambient condition, fuel
//! quality) mean-revert toward per-regime setpoints, and one fast latent
//! (combustion acoustics) adds short-memory dynamics. The 13 sensor columns
//! are smooth maps of the latents plus per-sensor Gaussian noise, so the
//! features are strongly correlated and live near a low-dimensional
//! manifold, as real turbine tags do.
//!
//! The target is a documented smooth nonlinear function of the *realized*
//! feature rows (current row plus an exponentially weighted moving average
//! of the acoustics sensor) with additive Gaussian noise of standard
//! deviation `noise_std`. [`ground_truth_series`] exposes exactly the
//! noiseless function, so `noise_std = 0` reproduces it bit for bit.
//!
//! All randomness comes from four independent, seeded ChaCha streams
//! (regimes, latent innovations, sensor noise, target noise); identical
//! spec and seed give identical bytes, and changing `noise_std` perturbs
//! only the target noise stream.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

use super::Dataset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetKind {
    Co,
    Nox,
}

impl TargetKind {
    pub fn column_name(&self) -> &'static str {
        match self {
            TargetKind::Co => "co",
            TargetKind::Nox => "nox",
        }
    }
}

impl std::str::FromStr for TargetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "co" => Ok(TargetKind::Co),
            "nox" => Ok(TargetKind::Nox),
            other => Err(Error::Config(format!("unknown target '{other}' (use co|nox)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub n_rows: usize,
    pub seed: u64,
    /// Target noise standard deviation, in target units.
    pub noise_std: f64,
    /// Number of distinct operating regimes.
    pub regimes: usize,
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        SyntheticSpec {
            n_rows: 10_000,
            seed: 0,
            noise_std: 0.6,
            regimes: 4,
        }
    }
}

impl SyntheticSpec {
    fn validate(&self) -> Result<()> {
        if self.n_rows == 0 {
            return Err(Error::Config("n_rows must be at least 1".into()));
        }
        if self.noise_std < 0.0 {
            return Err(Error::Config("noise_std must be non-negative".into()));
        }
        if self.regimes == 0 {
            return Err(Error::Config("regimes must be at least 1".into()));
        }
        Ok(())
    }
}

pub const FEATURE_NAMES: [&str; 13] = [
    "amb_temp",
    "amb_press",
    "humidity",
    "igv_angle",
    "shaft_speed",
    "cdp",
    "cdt",
    "fuel_flow",
    "tit",
    "exhaust_temp",
    "power_mw",
    "comp_eff",
    "burner_acc",
];

/// Per-sensor noise standard deviations, aligned with [`FEATURE_NAMES`].
const SENSOR_NOISE: [f64; 13] = [
    0.40, 0.80, 1.50, 0.50, 1.50, 0.12, 1.20, 0.02, 3.00, 1.50, 0.80, 0.002, 0.05,
];

// Latent dynamics: mean-reversion rates, innovation scales, and the fast
// acoustics AR(1) coefficient.
const KAPPA_LOAD: f64 = 0.10;
const SIGMA_LOAD: f64 = 0.012;
const KAPPA_AMB: f64 = 0.02;
const SIGMA_AMB: f64 = 0.015;
const KAPPA_FUEL: f64 = 0.05;
const SIGMA_FUEL: f64 = 0.008;
const PHI_ACOUSTIC: f64 = 0.55;
const SIGMA_ACOUSTIC: f64 = 0.66;

/// EWMA coefficient for the acoustics history term in both targets.
pub const EWMA_ALPHA: f64 = 0.35;

// Proxy constants shared by the generator and the documented ground truth:
// the target reads the realized sensors back through these fixed affine
// maps, so the ground truth is a function of the emitted feature rows only.
const IGV_BASE: f64 = 52.0;
const IGV_SPAN: f64 = 34.0;
const TIT_BASE: f64 = 1080.0;
const TIT_SPAN: f64 = 270.0;
const HUM_BASE: f64 = 60.0;
const HUM_SPAN: f64 = 14.0;
const EFF_BASE: f64 = 0.875;
const EFF_SPAN: f64 = 0.085;
const ACC_BASE: f64 = 1.9;
const ACC_LOAD: f64 = 0.6;
const ACC_SPAN: f64 = 0.75;

/// Generate a synthetic dataset. Deterministic for a given (spec, target).
pub fn generate_synthetic(spec: &SyntheticSpec, kind: TargetKind) -> Result<Dataset> {
    spec.validate()?;
    let n = spec.n_rows;

    let mut regime_rng = stream(spec.seed, 0);
    let mut latent_rng = stream(spec.seed, 1);
    let mut sensor_rng = stream(spec.seed, 2);
    let mut target_rng = stream(spec.seed, 3);

    // Per-regime setpoints for (load, ambient, fuel quality).
    let setpoints: Vec<(f64, f64, f64)> = (0..spec.regimes)
        .map(|_| {
            (
                regime_rng.gen_range(0.45..0.98),
                regime_rng.gen_range(-1.5..1.5),
                regime_rng.gen_range(0.85..1.15),
            )
        })
        .collect();

    // Regime schedule: contiguous segments of varying length.
    let mean_seg = ((n / (3 * spec.regimes)).max(40)).min(n.max(1));
    let mut regime_of_row = Vec::with_capacity(n);
    let mut current = 0usize;
    while regime_of_row.len() < n {
        let len = regime_rng.gen_range(mean_seg / 2 + 1..=mean_seg * 3 / 2 + 1);
        for _ in 0..len {
            if regime_of_row.len() == n {
                break;
            }
            regime_of_row.push(current);
        }
        if spec.regimes > 1 {
            let step = regime_rng.gen_range(1..spec.regimes);
            current = (current + step) % spec.regimes;
        }
    }

    // Latents start at the first regime's setpoints.
    let (mut load, mut amb, mut fuel) = setpoints[regime_of_row[0]];
    let mut acoustic = 0.0f64;

    let mut features = Matrix::zeros(n, 13);
    for i in 0..n {
        let (set_l, set_a, set_q) = setpoints[regime_of_row[i]];
        load += KAPPA_LOAD * (set_l - load) + SIGMA_LOAD * normal(&mut latent_rng);
        amb += KAPPA_AMB * (set_a - amb) + SIGMA_AMB * normal(&mut latent_rng);
        fuel += KAPPA_FUEL * (set_q - fuel) + SIGMA_FUEL * normal(&mut latent_rng);
        acoustic = PHI_ACOUSTIC * acoustic + SIGMA_ACOUSTIC * normal(&mut latent_rng);

        let clean = [
            15.0 + 9.0 * amb,
            1013.0 - 4.0 * amb,
            HUM_BASE - HUM_SPAN * amb,
            IGV_BASE + IGV_SPAN * load,
            3005.0 + 42.0 * load,
            5.5 + 8.5 * load * load,
            345.0 + 118.0 * load + 0.8 * amb,
            fuel * (0.55 + 2.2 * load),
            TIT_BASE + TIT_SPAN * load * fuel - 1.8 * amb,
            472.0 + 80.0 * load - 55.0 * (load - 0.75) * (load - 0.75) + 0.5 * amb,
            118.0 * load * (1.0 + 0.10 * (fuel - 1.0)) - 0.25 * amb,
            EFF_BASE - EFF_SPAN * (load - 0.82) * (load - 0.82) + 0.0015 * amb,
            ACC_BASE + ACC_LOAD * load + ACC_SPAN * acoustic,
        ];
        let row = features.row_mut(i);
        for j in 0..13 {
            row[j] = clean[j] + SENSOR_NOISE[j] * normal(&mut sensor_rng);
        }
    }

    let clean_target = ground_truth_series(kind, &features);
    let target: Vec<f64> = clean_target
        .iter()
        .map(|v| v + spec.noise_std * normal(&mut target_rng))
        .collect();

    Dataset::new(
        FEATURE_NAMES.iter().map(|s| s.to_string()).collect(),
        features,
        kind.column_name().to_string(),
        target,
    )
}

/// The documented noiseless target as a function of the realized feature
/// rows. Row `i` depends on row `i` and on the EWMA of the acoustics proxy
/// over rows `0..=i`.
pub fn ground_truth_series(kind: TargetKind, features: &Matrix) -> Vec<f64> {
    assert_eq!(features.cols(), 13, "expected the 13 synthetic sensor columns");
    let mut out = Vec::with_capacity(features.rows());
    let mut ewma = 0.0f64;
    for i in 0..features.rows() {
        let x = features.row(i);
        let lo = (x[3] - IGV_BASE) / IGV_SPAN;
        let ti = (x[8] - TIT_BASE) / TIT_SPAN;
        let hu = (HUM_BASE - x[2]) / HUM_SPAN;
        let ef = (x[11] - EFF_BASE) / EFF_SPAN;
        let ac = (x[12] - ACC_BASE - ACC_LOAD * lo) / ACC_SPAN;
        ewma = if i == 0 {
            ac
        } else {
            (1.0 - EWMA_ALPHA) * ewma + EWMA_ALPHA * ac
        };
        let v = match kind {
            TargetKind::Nox => {
                48.0 + 14.0 * ti + 16.0 * ti * ti + 7.0 * lo * ti - 5.5 * hu
                    + 4.0 * (2.5 * (lo - 0.55)).tanh()
                    - 6.0 * ef
                    + 5.0 * (6.5 * (lo + 0.8 * ti)).sin()
                    + 6.5 * ewma
            }
            TargetKind::Co => {
                2.2 + 26.0 * (-3.2 * lo).exp() + 7.0 * (1.05 - ti) * (1.05 - ti) + 1.2 * hu
                    + 3.0 * (5.5 * (lo + 0.6 * ti)).sin()
                    + 2.6 * ewma
            }
        };
        out.push(v);
    }
    out
}

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// Standard normal via Box-Muller; two uniforms per call keeps the stream
/// layout independent of caller interleaving.
fn normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

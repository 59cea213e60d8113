//! Predictive-emission-monitoring benchmark toolkit.
//!
//! Implements eight regression model families for CO/NOx prediction from
//! gas-turbine sensor data — elastic-net linear regression, epsilon-SVR,
//! CART, gradient-boosted trees, distance-weighted KNN, and MLP/LSTM/GRU
//! networks with handwritten backpropagation — together with the shared
//! preprocessing pipeline, error metrics, and an experiment harness that
//! grid-searches hyperparameters on validation MSE and emits leaderboard
//! reports.

pub mod bench;
pub mod data;
pub mod error;
pub mod linear;
pub mod matrix;
pub mod metrics;
pub mod neighbors;
pub mod neural;
pub mod svr;
pub mod trees;

pub use error::{Error, Result};

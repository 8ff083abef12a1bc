//! Regression machinery shared by the unit-root and cointegration modules:
//! least squares, Bartlett long-run covariance and the Newey-West automatic
//! bandwidth.

mod lrv;
mod ols;

use thiserror::Error;

pub use lrv::{bartlett_lrv, bartlett_weight, long_run_variance, nw_bandwidth, LrvEstimate};
pub use ols::{design_from_columns, ols, OlsFit, RCOND_THRESHOLD};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error("singular design (reciprocal condition {rcond:e}): {detail}")]
    Singular { rcond: f64, detail: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("insufficient data: need at least {needed} rows, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("bandwidth {bandwidth} invalid for {rows} rows")]
    Bandwidth { bandwidth: f64, rows: usize },
    #[error("non-finite input")]
    NonFinite,
}

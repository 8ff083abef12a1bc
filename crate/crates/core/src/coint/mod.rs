//! Cointegrating regressions: DOLS, FMOLS, Hansen's L_c stability test and
//! Wald t-tests, plus drivers for the relative-demand and real-money-demand
//! equations.
//!
//! Regressor panels are `T x m` matrices of I(1) series; an intercept is
//! always included and reported as coefficient 0.

mod dols;
mod equations;
mod fmols;
mod hansen;
mod wald;

use nalgebra::DMatrix;
use thiserror::Error;

use crate::kernel::KernelError;
use crate::timeseries::SeriesError;

pub use dols::{default_max_leads_lags, dols};
pub use equations::{
    estimate_eq15, estimate_eq20, Eq15Columns, Eq15Fit, Eq15Result, Eq20Columns, Eq20Fit,
    Eq20Result,
};
pub use fmols::fmols;
pub use hansen::{hansen_lc, lc_critical_value, LcResult, PBand, LC_LEVELS};
pub use wald::{wald_t, wald_test, WaldResult};

#[derive(Debug, Error)]
pub enum CointError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("insufficient sample: need {needed} observations, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("no L_c table for {0} regressors (1 to 5 supported)")]
    UnsupportedRegressors(usize),
    #[error("regressor panel does not match the estimate: {0}")]
    PanelMismatch(String),
    #[error("coefficient index {index} out of range for {len} coefficients")]
    IndexOutOfRange { index: usize, len: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Dols,
    Fmols,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Dols => "DOLS",
            Method::Fmols => "FMOLS",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CointTuning {
    LeadsLags(usize),
    Bandwidth(f64),
}

/// Output of [`dols`] or [`fmols`].
#[derive(Debug, Clone)]
pub struct CointEstimate {
    pub method: Method,
    /// Intercept followed by one slope per regressor.
    pub coefficients: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub r_squared: f64,
    /// Equilibrium error `y - c - X b` over the estimation sample.
    pub residuals: Vec<f64>,
    pub tuning: CointTuning,
    /// Long-run variance scaling the standard errors: that of the DOLS
    /// residual, or the conditional `omega_{u.v}` for FMOLS.
    pub long_run_variance: f64,
    pub nobs: usize,
    /// First input row used in estimation.
    pub sample_start: usize,
    pub input_rows: usize,
    /// Residuals entering the stability scores and the constant score
    /// correction (zero for DOLS).
    pub(crate) score_residuals: Vec<f64>,
    pub(crate) score_correction: Vec<f64>,
}

impl CointEstimate {
    pub fn regressors(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn slopes(&self) -> &[f64] {
        &self.coefficients[1..]
    }
}

pub(crate) fn check_inputs(y: &[f64], x: &DMatrix<f64>) -> Result<(), CointError> {
    if x.nrows() != y.len() {
        return Err(CointError::Dimension(format!(
            "regressand has {} rows, regressors {}",
            y.len(),
            x.nrows()
        )));
    }
    if x.ncols() == 0 {
        return Err(CointError::Dimension("no regressors".into()));
    }
    if y.iter().chain(x.iter()).any(|v| !v.is_finite()) {
        return Err(KernelError::NonFinite.into());
    }
    Ok(())
}

/// `(1, x_t)` rows for `t` in `start..start + n`.
pub(crate) fn levels_design(x: &DMatrix<f64>, start: usize, n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, x.ncols() + 1, |r, c| if c == 0 { 1.0 } else { x[(start + r, c - 1)] })
}

pub(crate) fn equilibrium_error(y: &[f64], z: &DMatrix<f64>, start: usize, beta: &[f64]) -> Vec<f64> {
    (0..z.nrows())
        .map(|r| y[start + r] - (0..z.ncols()).map(|c| z[(r, c)] * beta[c]).sum::<f64>())
        .collect()
}

pub(crate) fn r_squared(y: &[f64], resid: &[f64]) -> f64 {
    let mean = y.iter().sum::<f64>() / y.len() as f64;
    let tss: f64 = y.iter().map(|v| (v - mean).powi(2)).sum();
    let rss: f64 = resid.iter().map(|v| v * v).sum();
    if tss > 0.0 {
        (1.0 - rss / tss).clamp(0.0, 1.0)
    } else {
        0.0
    }
}

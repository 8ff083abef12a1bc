//! Augmented Dickey-Fuller and Phillips-Perron tests, constant only.
//!
//! Both regress `dy_t` on `(1, y_{t-1}, ...)` and judge the t-ratio on
//! `y_{t-1}` against MacKinnon's (2010) response-surface critical values for
//! the no-trend case, evaluated at the effective sample size.

use nalgebra::DMatrix;
use thiserror::Error;

use crate::kernel::{bartlett_lrv, nw_bandwidth, ols, KernelError, OlsFit};
use crate::significance::Significance;
use crate::timeseries::TimeSeries;

pub const MIN_LENGTH: usize = 25;

/// Critical-value response surface `b0 + b1/T + b2/T^2 + b3/T^3` at 1/5/10%.
const MACKINNON_C: [[f64; 4]; 3] = [
    [-3.43035, -6.5393, -16.786, -79.433],
    [-2.86154, -2.8903, -4.234, -40.040],
    [-2.56677, -1.5384, -2.809, 0.0],
];

#[derive(Debug, Error)]
pub enum UnitRootError {
    #[error("series needs at least {needed} observations, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitRootTest {
    Adf,
    Pp,
}

impl std::fmt::Display for UnitRootTest {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            UnitRootTest::Adf => "ADF",
            UnitRootTest::Pp => "PP",
        })
    }
}

/// Lag order (ADF) or kernel bandwidth (PP).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tuning {
    Lags(usize),
    Bandwidth(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitRootResult {
    pub test: UnitRootTest,
    pub statistic: f64,
    pub tuning: Tuning,
    /// 1%, 5%, 10% critical values at `nobs`.
    pub critical_values: [f64; 3],
    pub significance: Significance,
    /// Observations in the final regression.
    pub nobs: usize,
}

/// MacKinnon (2010) constant-only critical values for sample size `nobs`.
pub fn critical_values(nobs: usize) -> [f64; 3] {
    let t = nobs as f64;
    MACKINNON_C.map(|b| b[0] + b[1] / t + b[2] / (t * t) + b[3] / (t * t * t))
}

/// Schwert's lag ceiling `floor(12 (T/100)^(1/4))`.
pub fn schwert_max_lag(n: usize) -> usize {
    (12.0 * (n as f64 / 100.0).powf(0.25)).floor() as usize
}

pub fn adf(series: &TimeSeries) -> Result<UnitRootResult, UnitRootError> {
    adf_values(series.values(), None)
}

pub fn pp(series: &TimeSeries) -> Result<UnitRootResult, UnitRootError> {
    pp_values(series.values(), None)
}

/// ADF on raw values. `max_lag` defaults to [`schwert_max_lag`]; the lag is
/// chosen by AIC on the sample common to all candidates, then the chosen
/// model is re-fitted on its own longest sample.
pub fn adf_values(y: &[f64], max_lag: Option<usize>) -> Result<UnitRootResult, UnitRootError> {
    check_input(y)?;
    let n = y.len();
    let pmax = max_lag.unwrap_or_else(|| schwert_max_lag(n)).min(n / 2 - 3);
    let dy: Vec<f64> = y.windows(2).map(|w| w[1] - w[0]).collect();

    let mut best = (f64::INFINITY, 0);
    for p in 0..=pmax {
        let aic = adf_regression(y, &dy, p, pmax)?.aic();
        if aic < best.0 {
            best = (aic, p);
        }
    }
    let p = best.1;
    let fit = adf_regression(y, &dy, p, p)?;
    let statistic = t_ratio(&fit)?;
    Ok(finish(UnitRootTest::Adf, statistic, Tuning::Lags(p), fit.nobs))
}

/// Regression of `dy_t` on `(1, y_{t-1}, dy_{t-1}, ..., dy_{t-p})` over
/// `t = start+1 .. n-1` (indices into `y`).
fn adf_regression(y: &[f64], dy: &[f64], p: usize, start: usize) -> Result<OlsFit, UnitRootError> {
    // dy[k] = y[k+1] - y[k]; the regressand at time t is dy[t-1]
    let rows: Vec<usize> = (start + 1..y.len()).collect();
    let x = DMatrix::from_fn(rows.len(), 1 + p, |r, c| {
        let t = rows[r];
        if c == 0 {
            y[t - 1]
        } else {
            dy[t - 1 - c]
        }
    });
    let lhs: Vec<f64> = rows.iter().map(|&t| dy[t - 1]).collect();
    Ok(ols(&lhs, &x, true)?)
}

/// Base Dickey-Fuller regression `dy_t = a + rho y_{t-1} + e_t`, `t = 1..n-1`.
pub fn dickey_fuller_regression(y: &[f64]) -> Result<OlsFit, UnitRootError> {
    check_input(y)?;
    let dy: Vec<f64> = y.windows(2).map(|w| w[1] - w[0]).collect();
    adf_regression(y, &dy, 0, 0)
}

/// PP `Z_t` on raw values. `bandwidth` defaults to the Newey-West choice on
/// the base-regression residuals.
pub fn pp_values(y: &[f64], bandwidth: Option<f64>) -> Result<UnitRootResult, UnitRootError> {
    let fit = dickey_fuller_regression(y)?;
    let t_rho = t_ratio(&fit)?;
    let tn = fit.nobs as f64;
    let u = DMatrix::from_column_slice(fit.nobs, 1, &fit.residuals);
    let bw = match bandwidth {
        Some(b) => b,
        None => nw_bandwidth(&u)?,
    };
    let lam2 = bartlett_lrv(&u, bw)?.omega[(0, 0)];
    if !(lam2 > 0.0) {
        return Err(UnitRootError::Degenerate("non-positive long-run variance"));
    }
    let gamma0 = fit.rss / tn;
    let s = fit.sigma2().sqrt();
    let se_rho = fit.covariance[(1, 1)].sqrt();
    let lam = lam2.sqrt();
    let z = (gamma0 / lam2).sqrt() * t_rho - 0.5 * (lam2 - gamma0) / lam * (tn * se_rho / s);
    Ok(finish(UnitRootTest::Pp, z, Tuning::Bandwidth(bw), fit.nobs))
}

fn check_input(y: &[f64]) -> Result<(), UnitRootError> {
    if y.len() < MIN_LENGTH {
        return Err(UnitRootError::InsufficientData {
            needed: MIN_LENGTH,
            got: y.len(),
        });
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(KernelError::NonFinite.into());
    }
    if y.iter().all(|&v| v == y[0]) {
        return Err(UnitRootError::Degenerate("series is constant"));
    }
    Ok(())
}

fn t_ratio(fit: &OlsFit) -> Result<f64, UnitRootError> {
    let se = fit.covariance[(1, 1)].sqrt();
    let scale = fit.coefficients.iter().map(|c| c.abs()).fold(1.0, f64::max);
    if !(se > 1e-14 * scale) {
        return Err(UnitRootError::Degenerate("regression fits exactly"));
    }
    Ok(fit.coefficients[1] / se)
}

fn finish(test: UnitRootTest, statistic: f64, tuning: Tuning, nobs: usize) -> UnitRootResult {
    let cv = critical_values(nobs);
    UnitRootResult {
        test,
        statistic,
        tuning,
        critical_values: cv,
        significance: Significance::from_left_tail(statistic, cv),
        nobs,
    }
}

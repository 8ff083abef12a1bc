use nalgebra::DMatrix;

use super::{check_inputs, equilibrium_error, levels_design, CointError, CointEstimate, CointTuning, Method};
use crate::kernel::{long_run_variance, ols, OlsFit};

/// `min(8, floor(4 (T/100)^(1/4)))`.
pub fn default_max_leads_lags(t: usize) -> usize {
    ((4.0 * (t as f64 / 100.0).powf(0.25)).floor() as usize).min(8)
}

/// Dynamic OLS of `y` on `(1, X_t, dX_{t-k}, ..., dX_{t+k})`.
///
/// `k` is chosen by AIC over `0..=max_k` (default [`default_max_leads_lags`])
/// with every candidate fitted on the sample `max_k + 1 ..= T - 1 - max_k`,
/// so the criteria are comparable; with `max_k = 0` the whole sample is used
/// and the fit is static OLS. Standard errors are the OLS ones scaled by the
/// ratio of the residual's long-run to short-run variance.
pub fn dols(y: &[f64], x: &DMatrix<f64>, max_k: Option<usize>) -> Result<CointEstimate, CointError> {
    check_inputs(y, x)?;
    let t_len = y.len();
    let m = x.ncols();
    let kmax = max_k.unwrap_or_else(|| default_max_leads_lags(t_len));
    let (start, end) = if kmax == 0 { (0, t_len) } else { (kmax + 1, t_len.saturating_sub(kmax)) };
    let n = end.saturating_sub(start);
    let params = 1 + m + m * (2 * kmax + 1) * usize::from(kmax > 0);
    let needed = params + 10;
    if n < needed {
        return Err(CointError::InsufficientData { needed: needed + t_len - n, got: t_len });
    }
    let lhs = &y[start..end];

    let mut best: Option<(f64, usize, OlsFit)> = None;
    for k in 0..=kmax {
        let design = dols_design(x, start, n, k);
        let fit = ols(lhs, &design, true)?;
        let aic = fit.aic();
        if best.as_ref().is_none_or(|b| aic < b.0) {
            best = Some((aic, k, fit));
        }
    }
    let (_, k, fit) = best.expect("at least one candidate");

    let (lrv, _) = long_run_variance(&fit.residuals)?;
    let s2 = fit.sigma2();
    let ratio = if s2 > 0.0 { lrv / s2 } else { 0.0 };
    let coefficients = fit.coefficients[..=m].to_vec();
    let std_errors = (0..=m).map(|i| (fit.covariance[(i, i)] * ratio).max(0.0).sqrt()).collect();
    let z = levels_design(x, start, n);
    let residuals = equilibrium_error(y, &z, start, &coefficients);

    Ok(CointEstimate {
        method: Method::Dols,
        coefficients,
        std_errors,
        r_squared: fit.r_squared,
        residuals,
        tuning: CointTuning::LeadsLags(k),
        long_run_variance: lrv,
        nobs: n,
        sample_start: start,
        input_rows: t_len,
        score_residuals: fit.residuals,
        score_correction: vec![0.0; m + 1],
    })
}

/// Levels followed by `dX_{t+j}` for `j = -k..=k` (no differences at k = 0).
fn dols_design(x: &DMatrix<f64>, start: usize, n: usize, k: usize) -> DMatrix<f64> {
    let m = x.ncols();
    let ncols = if k == 0 { m } else { m * (2 * k + 2) };
    DMatrix::from_fn(n, ncols, |r, c| {
        let t = start + r;
        if c < m {
            return x[(t, c)];
        }
        let block = (c - m) / m;
        let i = (c - m) % m;
        let s = t + block - k;
        x[(s, i)] - x[(s - 1, i)]
    })
}

use nalgebra::DMatrix;

use super::KernelError;

/// Bartlett-kernel long-run covariance of a multivariate series.
///
/// With `Gamma_j = (1/T) sum_t w_{t-j} w_t'` (demeaned), so that entry
/// `(a, b)` estimates `Cov(w_a[t-j], w_b[t])`:
///
/// * `omega  = Gamma_0 + sum_j k_j (Gamma_j + Gamma_j')`
/// * `lambda = sum_{j>=1} k_j Gamma_j`
/// * `delta  = Gamma_0 + lambda`
///
/// with `k_j = 1 - j / (bandwidth + 1)` for `j <= floor(bandwidth)`.
#[derive(Debug, Clone)]
pub struct LrvEstimate {
    pub omega: DMatrix<f64>,
    pub lambda: DMatrix<f64>,
    pub delta: DMatrix<f64>,
    pub bandwidth: f64,
}

pub fn bartlett_weight(j: usize, bandwidth: f64) -> f64 {
    if (j as f64) > bandwidth {
        0.0
    } else {
        1.0 - j as f64 / (bandwidth + 1.0)
    }
}

fn demeaned(u: &DMatrix<f64>) -> DMatrix<f64> {
    let t = u.nrows() as f64;
    let mut d = u.clone();
    for mut col in d.column_iter_mut() {
        let mean = col.sum() / t;
        col.add_scalar_mut(-mean);
    }
    d
}

/// `Gamma_j` of an already demeaned matrix.
fn autocovariance(d: &DMatrix<f64>, j: usize) -> DMatrix<f64> {
    let t = d.nrows();
    let k = d.ncols();
    let lead = d.rows(j, t - j);
    let lag = d.rows(0, t - j);
    let mut g = lag.transpose() * lead;
    g /= t as f64;
    debug_assert_eq!(g.shape(), (k, k));
    g
}

pub fn bartlett_lrv(u: &DMatrix<f64>, bandwidth: f64) -> Result<LrvEstimate, KernelError> {
    let t = u.nrows();
    if t < 2 {
        return Err(KernelError::InsufficientData { needed: 2, got: t });
    }
    if !(bandwidth.is_finite() && bandwidth >= 0.0) || bandwidth >= t as f64 {
        return Err(KernelError::Bandwidth { bandwidth, rows: t });
    }
    if u.iter().any(|v| !v.is_finite()) {
        return Err(KernelError::NonFinite);
    }
    let d = demeaned(u);
    let gamma0 = autocovariance(&d, 0);
    let k = u.ncols();
    let mut lambda = DMatrix::zeros(k, k);
    for j in 1..=(bandwidth.floor() as usize) {
        let w = bartlett_weight(j, bandwidth);
        lambda += autocovariance(&d, j) * w;
    }
    let omega = &gamma0 + &lambda + lambda.transpose();
    let delta = &gamma0 + &lambda;
    Ok(LrvEstimate {
        omega,
        lambda,
        delta,
        bandwidth,
    })
}

/// Newey-West (1994) plug-in bandwidth for the Bartlett kernel, without
/// pre-whitening.
///
/// The columns are demeaned and summed with unit weights; the plug-in uses
/// `floor(4 (T/100)^(2/9))` sample autocovariances of that aggregate. The
/// result is capped at `T - 1`. Returns 0 (with a warning) when the
/// aggregate has zero variance.
pub fn nw_bandwidth(u: &DMatrix<f64>) -> Result<f64, KernelError> {
    let t = u.nrows();
    if t < 16 {
        return Err(KernelError::InsufficientData { needed: 16, got: t });
    }
    if u.iter().any(|v| !v.is_finite()) {
        return Err(KernelError::NonFinite);
    }
    let d = demeaned(u);
    let h: Vec<f64> = d.row_iter().map(|r| r.sum()).collect();
    let tf = t as f64;
    let n = (4.0 * (tf / 100.0).powf(2.0 / 9.0)).floor() as usize;
    let sigma = |j: usize| -> f64 { h[j..].iter().zip(&h[..t - j]).map(|(a, b)| a * b).sum::<f64>() / tf };

    let sigma0 = sigma(0);
    let mut s0 = sigma0;
    let mut s1 = 0.0;
    for j in 1..=n {
        let sj = sigma(j);
        s0 += 2.0 * sj;
        s1 += 2.0 * j as f64 * sj;
    }
    if !(sigma0 > 0.0) || !(s0 > 0.0) {
        log::warn!("degenerate residuals in bandwidth selection (variance {sigma0:e}); using bandwidth 0");
        return Ok(0.0);
    }
    let gamma = 1.1447 * ((s1 / s0).powi(2)).powf(1.0 / 3.0);
    let bw = gamma * tf.powf(1.0 / 3.0);
    Ok(bw.min(tf - 1.0))
}

/// Long-run variance of a single series with the automatic bandwidth.
pub fn long_run_variance(x: &[f64]) -> Result<(f64, f64), KernelError> {
    let m = DMatrix::from_column_slice(x.len(), 1, x);
    let bw = nw_bandwidth(&m)?;
    let est = bartlett_lrv(&m, bw)?;
    Ok((est.omega[(0, 0)], bw))
}

use nalgebra::{DMatrix, DVector};

use super::{check_inputs, equilibrium_error, levels_design, r_squared, CointError, CointEstimate, CointTuning, Method};
use crate::kernel::{bartlett_lrv, nw_bandwidth, ols, LrvEstimate};

const MIN_ROWS: usize = 50;

/// Phillips-Hansen fully modified OLS with an intercept.
///
/// The static OLS residual `u` and `v = dX` (first observation dropped) feed a
/// Bartlett long-run covariance at the Newey-West bandwidth. The regressand is
/// corrected for endogeneity, `y+ = y - O_uv O_vv^-1 dX`, and the slope moment
/// for serial correlation, `D+_vu = D_vu - D_vv O_vv^-1 O_vu`, where `D` is
/// the one-sided covariance including lag 0. Standard errors use
/// `omega_{u.v} (Z'Z)^-1`.
pub fn fmols(y: &[f64], x: &DMatrix<f64>) -> Result<CointEstimate, CointError> {
    check_inputs(y, x)?;
    let t_len = y.len();
    let m = x.ncols();
    if t_len < MIN_ROWS.max(m + 12) {
        return Err(CointError::InsufficientData { needed: MIN_ROWS.max(m + 12), got: t_len });
    }
    let first = ols(y, x, true)?;
    let n = t_len - 1;
    let w = DMatrix::from_fn(n, m + 1, |r, c| {
        let t = r + 1;
        if c == 0 {
            first.residuals[t]
        } else {
            x[(t, c - 1)] - x[(t - 1, c - 1)]
        }
    });
    let bw = nw_bandwidth(&w)?;
    let lrv = bartlett_lrv(&w, bw)?;
    let z = levels_design(x, 1, n);
    let dx = w.columns(1, m).into_owned();
    let fm = fm_solve(&y[1..], &z, &dx, &lrv)?;

    let residuals = equilibrium_error(y, &z, 1, fm.beta.as_slice());
    let std_errors = (0..=m).map(|i| (fm.omega_uv * fm.xtx_inv[(i, i)]).max(0.0).sqrt()).collect();
    let mut correction = vec![0.0; m + 1];
    correction[1..].copy_from_slice(fm.delta_plus.as_slice());

    Ok(CointEstimate {
        method: Method::Fmols,
        coefficients: fm.beta.as_slice().to_vec(),
        std_errors,
        r_squared: r_squared(&y[1..], &residuals),
        residuals,
        tuning: CointTuning::Bandwidth(bw),
        long_run_variance: fm.omega_uv,
        nobs: n,
        sample_start: 1,
        input_rows: t_len,
        score_residuals: fm.resid_plus,
        score_correction: correction,
    })
}

struct FmSolution {
    beta: DVector<f64>,
    xtx_inv: DMatrix<f64>,
    delta_plus: DVector<f64>,
    omega_uv: f64,
    resid_plus: Vec<f64>,
}

fn fm_solve(y: &[f64], z: &DMatrix<f64>, dx: &DMatrix<f64>, lrv: &LrvEstimate) -> Result<FmSolution, CointError> {
    let n = y.len();
    let m = dx.ncols();
    let om = &lrv.omega;
    let de = &lrv.delta;
    let o_vv = om.view((1, 1), (m, m)).into_owned();
    let o_vu = om.view((1, 0), (m, 1)).into_owned();
    let d_vu = de.view((1, 0), (m, 1)).into_owned();
    let d_vv = de.view((1, 1), (m, m)).into_owned();
    let chol = o_vv.clone().cholesky().ok_or_else(|| {
        CointError::Degenerate("long-run covariance of the regressor differences is singular".into())
    })?;
    // O_vv^-1 O_vu
    let a = chol.solve(&o_vu);
    let y_plus = DVector::from_fn(n, |t, _| y[t] - (dx.row(t) * &a)[(0, 0)]);
    let delta_plus = d_vu - d_vv * &a;
    let omega_uv = om[(0, 0)] - (o_vu.transpose() * &a)[(0, 0)];

    // (Z'Z)^-1 (Z'y+ - n [0; D+]) = OLS(y+) - n (Z'Z)^-1 [0; D+]
    let fit = ols(y_plus.as_slice(), z, false)?;
    let mut correction = DVector::zeros(m + 1);
    correction.rows_mut(1, m).copy_from(&delta_plus.column(0));
    let beta = DVector::from_column_slice(&fit.coefficients) - &fit.xtx_inv * correction * n as f64;
    let resid_plus = (&y_plus - z * &beta).as_slice().to_vec();
    Ok(FmSolution {
        beta,
        xtx_inv: fit.xtx_inv,
        delta_plus: delta_plus.column(0).into_owned(),
        omega_uv: omega_uv.max(0.0),
        resid_plus,
    })
}

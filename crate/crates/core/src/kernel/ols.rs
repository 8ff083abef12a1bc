use nalgebra::{DMatrix, DVector};

use super::KernelError;

/// Reciprocal condition number (of the column-scaled design) below which the
/// design is treated as singular.
pub const RCOND_THRESHOLD: f64 = 1e-12;

/// Result of an ordinary least-squares fit.
///
/// When the fit was run with an intercept, coefficient 0 is the intercept and
/// the remaining coefficients follow the design's column order.
#[derive(Debug, Clone)]
pub struct OlsFit {
    pub coefficients: Vec<f64>,
    pub residuals: Vec<f64>,
    /// `s^2 (X'X)^{-1}` with `s^2 = RSS / (n - k)`.
    pub covariance: DMatrix<f64>,
    /// `(X'X)^{-1}` of the full design (intercept included).
    pub xtx_inv: DMatrix<f64>,
    pub rss: f64,
    pub r_squared: f64,
    pub nobs: usize,
    pub nparams: usize,
    pub has_intercept: bool,
}

impl OlsFit {
    pub fn sigma2(&self) -> f64 {
        self.rss / (self.nobs - self.nparams) as f64
    }

    pub fn std_errors(&self) -> Vec<f64> {
        (0..self.nparams)
            .map(|i| self.covariance[(i, i)].max(0.0).sqrt())
            .collect()
    }

    /// Gaussian log-likelihood at the ML variance `RSS / n`.
    pub fn log_likelihood(&self) -> f64 {
        let n = self.nobs as f64;
        // a perfect fit has unbounded likelihood; keep it finite for comparisons
        let s2 = (self.rss / n).max(f64::MIN_POSITIVE);
        -0.5 * n * ((2.0 * std::f64::consts::PI).ln() + s2.ln() + 1.0)
    }

    /// Akaike criterion `-2 logL + 2k`.
    pub fn aic(&self) -> f64 {
        -2.0 * self.log_likelihood() + 2.0 * self.nparams as f64
    }
}

/// Least squares of `y` on the columns of `x`, optionally prepending a
/// column of ones.
///
/// Solved by Householder QR on unit-norm columns; the design is rejected when
/// the reciprocal condition number of the scaled design falls below
/// [`RCOND_THRESHOLD`].
pub fn ols(y: &[f64], x: &DMatrix<f64>, intercept: bool) -> Result<OlsFit, KernelError> {
    let n = y.len();
    if x.nrows() != n {
        return Err(KernelError::Dimension(format!(
            "design has {} rows but y has {n}",
            x.nrows()
        )));
    }
    let design = if intercept {
        x.clone().insert_column(0, 1.0)
    } else {
        x.clone()
    };
    let k = design.ncols();
    if k == 0 {
        return Err(KernelError::Dimension("design has no columns".into()));
    }
    if n <= k {
        return Err(KernelError::InsufficientData { needed: k + 1, got: n });
    }
    if y.iter().chain(design.iter()).any(|v| !v.is_finite()) {
        return Err(KernelError::NonFinite);
    }

    let norms: Vec<f64> = design.column_iter().map(|c| c.norm()).collect();
    if let Some(j) = norms.iter().position(|&s| s == 0.0) {
        return Err(KernelError::Singular {
            rcond: 0.0,
            detail: format!("column {j} is identically zero"),
        });
    }
    let mut scaled = design.clone();
    for (j, mut col) in scaled.column_iter_mut().enumerate() {
        col /= norms[j];
    }

    let qr = scaled.qr();
    let r = qr.r();
    let sv = r.singular_values();
    let smax = sv.max();
    let smin = sv.min();
    let rcond = if smax > 0.0 { smin / smax } else { 0.0 };
    if !(rcond >= RCOND_THRESHOLD) {
        return Err(KernelError::Singular {
            rcond,
            detail: "regressors are (nearly) collinear".into(),
        });
    }

    let yv = DVector::from_column_slice(y);
    let qty = qr.q().transpose() * &yv;
    let beta_scaled = r
        .solve_upper_triangular(&qty)
        .ok_or_else(|| KernelError::Singular {
            rcond,
            detail: "triangular solve failed".into(),
        })?;
    let coefficients: Vec<f64> = beta_scaled
        .iter()
        .zip(&norms)
        .map(|(b, s)| b / s)
        .collect();

    let fitted = &design * DVector::from_column_slice(&coefficients);
    let residuals: Vec<f64> = y.iter().zip(fitted.iter()).map(|(a, b)| a - b).collect();
    let rss: f64 = residuals.iter().map(|e| e * e).sum();

    let r_inv = r
        .solve_upper_triangular(&DMatrix::identity(k, k))
        .ok_or_else(|| KernelError::Singular {
            rcond,
            detail: "triangular inverse failed".into(),
        })?;
    let mut xtx_inv = &r_inv * r_inv.transpose();
    for i in 0..k {
        for j in 0..k {
            xtx_inv[(i, j)] /= norms[i] * norms[j];
        }
    }
    let s2 = rss / (n - k) as f64;
    let covariance = &xtx_inv * s2;

    let tss: f64 = if intercept {
        let mean = y.iter().sum::<f64>() / n as f64;
        y.iter().map(|v| (v - mean).powi(2)).sum()
    } else {
        y.iter().map(|v| v * v).sum()
    };
    let r_squared = if tss > 0.0 {
        (1.0 - rss / tss).clamp(0.0, 1.0)
    } else if rss == 0.0 {
        1.0
    } else {
        0.0
    };

    Ok(OlsFit {
        coefficients,
        residuals,
        covariance,
        xtx_inv,
        rss,
        r_squared,
        nobs: n,
        nparams: k,
        has_intercept: intercept,
    })
}

/// Builds an `n x k` design from column slices.
pub fn design_from_columns(columns: &[&[f64]]) -> Result<DMatrix<f64>, KernelError> {
    let n = columns.first().map_or(0, |c| c.len());
    if columns.iter().any(|c| c.len() != n) {
        return Err(KernelError::Dimension("columns differ in length".into()));
    }
    Ok(DMatrix::from_fn(n, columns.len(), |i, j| columns[j][i]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exact_fit() {
        let x = DMatrix::from_column_slice(3, 1, &[1.0, 2.0, 3.0]);
        let fit = ols(&[1.0, 2.0, 3.0], &x, true).unwrap();
        assert_abs_diff_eq!(fit.coefficients[0], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(fit.coefficients[1], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(fit.r_squared, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn orthogonal_response() {
        let x = DMatrix::from_column_slice(4, 1, &[1.0, 1.0, 0.0, 0.0]);
        let y = [0.0, 0.0, 2.0, -3.0];
        let fit = ols(&y, &x, false).unwrap();
        assert_eq!(fit.coefficients, vec![0.0]);
        assert_eq!(fit.residuals, y.to_vec());
    }

    /// Oracle: normal equations solved by Cholesky, independent of the QR path.
    fn normal_equations(y: &[f64], x: &DMatrix<f64>) -> Vec<f64> {
        let xtx = x.transpose() * x;
        let xty = x.transpose() * DVector::from_column_slice(y);
        xtx.cholesky().unwrap().solve(&xty).iter().copied().collect()
    }

    #[test]
    fn matches_normal_equations_on_random_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let x = DMatrix::from_fn(50, 3, |_, _| rng.random_range(-1.0..1.0));
            let y: Vec<f64> = (0..50).map(|_| rng.random_range(-1.0..1.0)).collect();
            let fit = ols(&y, &x, false).unwrap();
            let oracle = normal_equations(&y, &x);
            for (a, b) in fit.coefficients.iter().zip(&oracle) {
                assert_abs_diff_eq!(*a, *b, epsilon = 1e-10);
            }
            // residuals orthogonal to every regressor
            for col in x.column_iter() {
                let dot: f64 = col.iter().zip(&fit.residuals).map(|(a, b)| a * b).sum();
                assert!(dot.abs() < 1e-8);
            }
        }
    }

    #[test]
    fn singular_design_is_rejected() {
        let x = DMatrix::from_fn(10, 2, |i, j| (i as f64) * (j as f64 + 1.0));
        let y: Vec<f64> = (0..10).map(|i| i as f64).collect();
        assert!(matches!(ols(&y, &x, true), Err(KernelError::Singular { .. })));
        let constant = DMatrix::from_element(10, 1, 3.0);
        assert!(matches!(ols(&y, &constant, true), Err(KernelError::Singular { .. })));
    }

    #[test]
    fn r_squared_in_unit_interval_and_aic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = DMatrix::from_fn(40, 2, |_, _| rng.random_range(-1.0..1.0));
        let y: Vec<f64> = (0..40).map(|_| rng.random_range(-1.0..1.0)).collect();
        let fit = ols(&y, &x, true).unwrap();
        assert!((0.0..=1.0).contains(&fit.r_squared));
        let n = 40.0;
        let expected = n * ((2.0 * std::f64::consts::PI).ln() + (fit.rss / n).ln() + 1.0) + 6.0;
        assert_abs_diff_eq!(fit.aic(), expected, epsilon = 1e-10);
    }

    #[test]
    fn dimension_errors() {
        let x = DMatrix::from_element(3, 1, 1.0);
        assert!(matches!(ols(&[1.0, 2.0], &x, false), Err(KernelError::Dimension(_))));
        let x = DMatrix::from_fn(2, 2, |i, j| (i + j) as f64);
        assert!(matches!(
            ols(&[1.0, 2.0], &x, false),
            Err(KernelError::InsufficientData { .. })
        ));
    }
}

//! Hansen's L_c test of parameter stability; its null is cointegration.
//!
//! `L_c = tr(M^-1 sum_t S_t S_t') / (T omega)` with `M = sum z_t z_t'`,
//! `z_t = (1, x_t)` and `S_t` the running sum of the estimator's scores.
//! p-values come from the asymptotic null distribution (constant, no trend),
//! tabulated by simulation at `T = 1000` with 200 000 draws per row.

use nalgebra::DMatrix;

use super::{levels_design, CointError, CointEstimate};

/// Upper-tail levels of [`LC_CRITICAL`].
pub const LC_LEVELS: [f64; 9] = [0.01, 0.025, 0.05, 0.075, 0.10, 0.125, 0.15, 0.175, 0.20];

/// Rows for `m = 1..=5` I(1) regressors.
const LC_CRITICAL: [[f64; 9]; 5] = [
    [0.9049, 0.7096, 0.5724, 0.4973, 0.4459, 0.4065, 0.3753, 0.3502, 0.3280],
    [1.0480, 0.8470, 0.7000, 0.6177, 0.5603, 0.5165, 0.4807, 0.4511, 0.4253],
    [1.1951, 0.9806, 0.8247, 0.7368, 0.6742, 0.6264, 0.5869, 0.5543, 0.5249],
    [1.3309, 1.1117, 0.9473, 0.8549, 0.7876, 0.7343, 0.6920, 0.6560, 0.6243],
    [1.4628, 1.2399, 1.0717, 0.9729, 0.9006, 0.8455, 0.7996, 0.7607, 0.7265],
];

/// Banded p-value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PBand {
    /// Beyond the 1% critical value.
    BelowOnePercent,
    /// Linearly interpolated between tabulated levels.
    Interpolated(f64),
    /// Short of the 20% critical value.
    AboveTwentyPercent,
}

impl PBand {
    /// Whether the test rejects at `level` (one of [`LC_LEVELS`] or between).
    pub fn rejects_at(self, level: f64) -> bool {
        match self {
            PBand::BelowOnePercent => true,
            PBand::Interpolated(p) => p < level,
            PBand::AboveTwentyPercent => false,
        }
    }
}

impl std::fmt::Display for PBand {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PBand::BelowOnePercent => f.write_str("<0.01"),
            PBand::Interpolated(p) => write!(f, "{p:.2}"),
            PBand::AboveTwentyPercent => f.write_str(">0.2"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LcResult {
    pub statistic: f64,
    pub p_band: PBand,
    /// Number of I(1) regressors.
    pub m: usize,
}

impl LcResult {
    /// Rejection at a tabulated level, by direct comparison with its critical value.
    pub fn rejects(&self, level_index: usize) -> bool {
        self.statistic > LC_CRITICAL[self.m - 1][level_index]
    }
}

/// Critical value for `m` regressors at `LC_LEVELS[level_index]`.
pub fn lc_critical_value(m: usize, level_index: usize) -> Result<f64, CointError> {
    if !(1..=5).contains(&m) {
        return Err(CointError::UnsupportedRegressors(m));
    }
    Ok(LC_CRITICAL[m - 1][level_index])
}

fn p_band(m: usize, stat: f64) -> PBand {
    let row = &LC_CRITICAL[m - 1];
    if stat >= row[0] {
        return PBand::BelowOnePercent;
    }
    if stat < row[8] {
        return PBand::AboveTwentyPercent;
    }
    // row decreasing: find j with row[j+1] <= stat < row[j]
    let j = (0..8).find(|&j| stat >= row[j + 1]).expect("bracketed");
    let frac = (row[j] - stat) / (row[j] - row[j + 1]);
    PBand::Interpolated(LC_LEVELS[j] + frac * (LC_LEVELS[j + 1] - LC_LEVELS[j]))
}

/// L_c for an estimate produced on the regressor panel `x`.
///
/// Scores are `z_t u_t - c` with the estimator's score residuals and
/// correction; by construction they sum to zero, which is checked to catch a
/// panel that does not match the estimate.
pub fn hansen_lc(est: &CointEstimate, x: &DMatrix<f64>) -> Result<LcResult, CointError> {
    let m = est.regressors();
    if !(1..=5).contains(&m) {
        return Err(CointError::UnsupportedRegressors(m));
    }
    if x.nrows() != est.input_rows || x.ncols() != m {
        return Err(CointError::PanelMismatch(format!(
            "estimate used a {}x{} panel, got {}x{}",
            est.input_rows,
            m,
            x.nrows(),
            x.ncols()
        )));
    }
    let n = est.nobs;
    let z = levels_design(x, est.sample_start, n);
    let mut cum = vec![0.0; m + 1];
    let mut ss = DMatrix::<f64>::zeros(m + 1, m + 1);
    let mut abs_total = 0.0;
    for t in 0..n {
        for c in 0..=m {
            let s = z[(t, c)] * est.score_residuals[t] - est.score_correction[c];
            cum[c] += s;
            abs_total += s.abs();
        }
        for a in 0..=m {
            for b in 0..=m {
                ss[(a, b)] += cum[a] * cum[b];
            }
        }
    }
    let end_norm = cum.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if end_norm > 1e-7 * abs_total.max(f64::MIN_POSITIVE) {
        return Err(CointError::PanelMismatch(format!(
            "scores do not sum to zero (|S_T| = {end_norm:e})"
        )));
    }
    let omega = est.long_run_variance;
    if !(omega > 0.0) {
        return Err(CointError::Degenerate("zero long-run variance of the equation error".into()));
    }
    let gram = z.transpose() * &z;
    let chol = gram
        .cholesky()
        .ok_or_else(|| CointError::Degenerate("regressor moment matrix is singular".into()))?;
    let statistic = (chol.solve(&ss).trace() / (n as f64 * omega)).max(0.0);
    Ok(LcResult {
        statistic,
        p_band: p_band(m, statistic),
        m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coint::testdata::system;
    use crate::coint::{dols, fmols};
    use crate::model::SimSpec;

    #[test]
    fn bands_from_table() {
        assert_eq!(p_band(1, 1.2), PBand::BelowOnePercent);
        assert_eq!(p_band(1, 0.1), PBand::AboveTwentyPercent);
        assert_eq!(p_band(1, 0.5724), PBand::Interpolated(0.05));
        match p_band(2, (0.7000 + 0.6177) / 2.0) {
            PBand::Interpolated(p) => assert!((p - 0.0625).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        assert_eq!(PBand::AboveTwentyPercent.to_string(), ">0.2");
        assert_eq!(PBand::BelowOnePercent.to_string(), "<0.01");
        assert_eq!(PBand::Interpolated(0.0625).to_string(), "0.06");
        // p decreases as the statistic grows
        let mut last = 1.0;
        for k in 0..200 {
            let p = match p_band(3, 0.4 + k as f64 * 0.005) {
                PBand::BelowOnePercent => 0.0,
                PBand::Interpolated(p) => p,
                PBand::AboveTwentyPercent => 0.3,
            };
            assert!(p <= last);
            last = p;
        }
        for row in LC_CRITICAL {
            assert!(row.windows(2).all(|w| w[0] > w[1]));
        }
    }

    #[test]
    fn statistic_is_nonnegative_and_stable_under_null() {
        let spec = SimSpec::ar1_design(vec![0.6, -0.3], vec![0.0; 2], 500, 0.3, 4);
        let (y, x) = system(&spec);
        for est in [dols(&y, &x, None).unwrap(), fmols(&y, &x).unwrap()] {
            let lc = hansen_lc(&est, &x).unwrap();
            assert!(lc.statistic >= 0.0);
            assert_eq!(lc.m, 2);
        }
    }

    #[test]
    fn mismatched_panel() {
        let spec = SimSpec::ar1_design(vec![0.6], vec![0.0], 300, 0.3, 6);
        let (y, x) = system(&spec);
        let est = fmols(&y, &x).unwrap();
        let other = system(&spec.clone().with_seed(7)).1;
        assert!(matches!(hansen_lc(&est, &other), Err(CointError::PanelMismatch(_))));
        let wide = DMatrix::from_fn(300, 2, |r, c| x[(r, 0)] + c as f64);
        assert!(matches!(hansen_lc(&est, &wide), Err(CointError::PanelMismatch(_))));
    }

    #[test]
    fn detects_a_break() {
        let spec = SimSpec::ar1_design(vec![1.0], vec![0.0], 1000, 0.3, 31);
        let (mut y, x) = system(&spec);
        for t in 500..1000 {
            y[t] += 0.5 * x[(t, 0)];
        }
        let est = fmols(&y, &x).unwrap();
        let lc = hansen_lc(&est, &x).unwrap();
        assert!(lc.p_band.rejects_at(0.05), "{lc:?}");
    }
}

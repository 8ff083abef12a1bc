use super::{SeriesError, TimeSeries};

/// Proportional per-month cost of holding money.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoldingCost(f64);

impl HoldingCost {
    pub fn from_monthly(phi: f64) -> Result<Self, SeriesError> {
        if !phi.is_finite() || phi < 0.0 {
            return Err(SeriesError::InvalidArgument(format!(
                "holding cost must be a finite non-negative number, got {phi}"
            )));
        }
        Ok(HoldingCost(phi))
    }

    pub fn monthly(self) -> f64 {
        self.0
    }
}

/// Converts an annual proportional cost into its geometric monthly equivalent,
/// `(1 + annual)^(1/12) - 1`.
pub fn monthly_phi(annual_rate: f64) -> Result<HoldingCost, SeriesError> {
    if !annual_rate.is_finite() || annual_rate <= -1.0 {
        return Err(SeriesError::InvalidArgument(format!(
            "annual rate must exceed -1, got {annual_rate}"
        )));
    }
    let phi = (annual_rate.ln_1p() / 12.0).exp_m1();
    if phi < 0.0 {
        return Err(SeriesError::InvalidArgument(format!(
            "negative annual holding cost {annual_rate} is not a cost"
        )));
    }
    HoldingCost::from_monthly(phi)
}

/// Discounted opportunity cost `(i + phi) / (1 + i)` of holding money.
///
/// The value dated `t` uses the rate set at `t` for the period `t -> t+1`.
pub fn opportunity_cost(rate: &TimeSeries, phi: HoldingCost) -> Result<TimeSeries, SeriesError> {
    let phi = phi.monthly();
    let mut out = Vec::with_capacity(rate.len());
    for (i, &r) in rate.values().iter().enumerate() {
        if r <= -1.0 {
            return Err(domain(rate, i, r, "rate must exceed -1"));
        }
        if r + phi <= 0.0 {
            return Err(domain(
                rate,
                i,
                r,
                "negative rate offsets the holding cost; opportunity cost is not positive",
            ));
        }
        out.push((r + phi) / (1.0 + r));
    }
    rate.with_values(format!("oc_{}", rate.name()), out)
}

/// Annualized percent rates to geometric monthly decimals, `(1 + a/100)^(1/12) - 1`.
pub fn annual_to_monthly_rate(rate: &TimeSeries) -> Result<TimeSeries, SeriesError> {
    let mut out = Vec::with_capacity(rate.len());
    for (i, &a) in rate.values().iter().enumerate() {
        if a <= -100.0 {
            return Err(domain(rate, i, a, "annual percent rate must exceed -100"));
        }
        out.push(((a / 100.0).ln_1p() / 12.0).exp_m1());
    }
    rate.with_values(rate.name(), out)
}

pub fn log_series(s: &TimeSeries) -> Result<TimeSeries, SeriesError> {
    let mut out = Vec::with_capacity(s.len());
    for (i, &v) in s.values().iter().enumerate() {
        if v <= 0.0 {
            return Err(domain(s, i, v, "logarithm of a non-positive value"));
        }
        out.push(v.ln());
    }
    s.with_values(format!("ln_{}", s.name()), out)
}

pub fn exp_series(s: &TimeSeries) -> Result<TimeSeries, SeriesError> {
    s.with_values(format!("exp_{}", s.name()), s.values().iter().map(|v| v.exp()).collect())
}

/// Log spread `ln oc - ln oc*` between two aligned positive series.
pub fn spread(oc: &TimeSeries, oc_star: &TimeSeries) -> Result<TimeSeries, SeriesError> {
    if oc.start() != oc_star.start() || oc.len() != oc_star.len() {
        return Err(SeriesError::Alignment(format!(
            "`{}` covers {}..{} but `{}` covers {}..{}",
            oc.name(),
            oc.start(),
            oc.end(),
            oc_star.name(),
            oc_star.start(),
            oc_star.end()
        )));
    }
    let a = log_series(oc)?;
    let b = log_series(oc_star)?;
    let values = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| x - y)
        .collect();
    oc.with_values("spread", values)
}

/// Converts a foreign-currency share of total deposits `f` into the
/// domestic-to-foreign ratio `(1 - f) / f`.
pub fn deposit_ratio_from_foreign_share(share: &TimeSeries) -> Result<TimeSeries, SeriesError> {
    let mut out = Vec::with_capacity(share.len());
    for (i, &f) in share.values().iter().enumerate() {
        if f <= 0.0 || f >= 1.0 {
            return Err(domain(share, i, f, "foreign deposit share must lie in (0, 1)"));
        }
        out.push((1.0 - f) / f);
    }
    share.with_values(share.name(), out)
}

fn domain(s: &TimeSeries, i: usize, value: f64, reason: &'static str) -> SeriesError {
    SeriesError::Domain {
        series: s.name().to_string(),
        date: s.date(i),
        value,
        reason,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::timeseries::Period;
    use approx::assert_abs_diff_eq;

    fn series(values: &[f64]) -> TimeSeries {
        TimeSeries::new("x", Period::monthly(2000, 1), values.to_vec()).unwrap()
    }

    #[test]
    fn phi_matches_one_percent_annual() {
        let phi = monthly_phi(0.01).unwrap().monthly();
        assert_abs_diff_eq!(phi, 0.00082953, epsilon = 1e-7);
        assert_eq!(monthly_phi(0.0).unwrap().monthly(), 0.0);
    }

    #[test]
    fn phi_two_percent() {
        // 1.02^(1/12) - 1 = 0.00165158... (Python mpmath, 30 digits)
        let phi = monthly_phi(0.02).unwrap().monthly();
        assert!(phi > 0.00165 && phi < 0.00166);
        assert_abs_diff_eq!(phi, 0.001651581301920, epsilon = 1e-15);
    }

    #[test]
    fn phi_domain() {
        assert!(monthly_phi(-1.0).is_err());
        assert!(monthly_phi(-2.0).is_err());
        assert!(HoldingCost::from_monthly(-1e-9).is_err());
    }

    #[test]
    fn opportunity_cost_values() {
        let phi = HoldingCost::from_monthly(0.00082953).unwrap();
        let oc = opportunity_cost(&series(&[0.0, 0.002]), phi).unwrap();
        assert_abs_diff_eq!(oc.values()[0], 0.00082953, epsilon = 1e-15);
        // (0.002 + 0.00082953) / 1.002, evaluated with mpmath
        assert_abs_diff_eq!(oc.values()[1], 0.0028238822355289, epsilon = 1e-15);
        assert_abs_diff_eq!(oc.values()[1], 0.0028239, epsilon = 1e-7);
    }

    #[test]
    fn opportunity_cost_boundary_names_date() {
        let phi = HoldingCost::from_monthly(0.00082953).unwrap();
        let err = opportunity_cost(&series(&[0.001, -0.00082953]), phi).unwrap_err();
        match err {
            SeriesError::Domain { date, .. } => assert_eq!(date, Period::monthly(2000, 2)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(opportunity_cost(&series(&[-1.0]), phi).is_err());
    }

    #[test]
    fn opportunity_cost_monotone_in_rate() {
        for phi in [0.0, 0.00082953, 0.01, 0.5, 0.99] {
            let hc = HoldingCost::from_monthly(phi).unwrap();
            let lo = -phi.min(0.99) + 1e-6;
            let grid: Vec<f64> = (0..400).map(|k| lo + (2.0 - lo) * k as f64 / 399.0).collect();
            let oc = opportunity_cost(&series(&grid), hc).unwrap();
            for w in oc.values().windows(2) {
                assert!(w[1] > w[0], "phi={phi}: {} !< {}", w[0], w[1]);
            }
        }
    }

    #[test]
    fn annual_percent_to_monthly() {
        let m = annual_to_monthly_rate(&series(&[0.0, 12.6825, -1.0])).unwrap();
        assert_eq!(m.values()[0], 0.0);
        assert_abs_diff_eq!(m.values()[1], 0.01, epsilon = 1e-6);
        assert!(m.values()[2] < 0.0 && m.values()[2].is_finite());
        assert!(annual_to_monthly_rate(&series(&[-100.0])).is_err());
    }

    #[test]
    fn logs() {
        let l = log_series(&series(&[1.0, std::f64::consts::E, 0.5])).unwrap();
        assert_eq!(l.values()[0], 0.0);
        assert_abs_diff_eq!(l.values()[1], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(l.values()[2], -std::f64::consts::LN_2, epsilon = 1e-15);
        let err = log_series(&series(&[1.0, 0.0])).unwrap_err();
        assert!(matches!(err, SeriesError::Domain { date, .. } if date == Period::monthly(2000, 2)));
    }

    #[test]
    fn spreads() {
        let a = series(&[0.003, 0.002]);
        assert!(spread(&a, &a).unwrap().values().iter().all(|&v| v == 0.0));
        let e = std::f64::consts::E;
        let b = series(&[0.002 * e, 0.004 * e]);
        let c = series(&[0.002, 0.004]);
        for v in spread(&b, &c).unwrap().values() {
            assert_abs_diff_eq!(*v, 1.0, epsilon = 1e-12);
        }
        let s = spread(&series(&[0.003]), &series(&[0.002])).unwrap();
        assert_abs_diff_eq!(s.values()[0], 0.405465108108164, epsilon = 1e-9);
        let shifted = TimeSeries::new("y", Period::monthly(2000, 2), vec![0.003, 0.002]).unwrap();
        assert!(matches!(spread(&a, &shifted), Err(SeriesError::Alignment(_))));
    }

    #[test]
    fn deposit_share_conversion() {
        let r = deposit_ratio_from_foreign_share(&series(&[0.5, 0.2])).unwrap();
        assert_eq!(r.values(), &[1.0, 4.0]);
        assert!(deposit_ratio_from_foreign_share(&series(&[1.0])).is_err());
    }
}

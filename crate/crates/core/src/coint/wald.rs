use statrs::function::erf::erfc;

use super::{CointError, CointEstimate};
use crate::significance::Significance;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaldResult {
    pub index: usize,
    pub value: f64,
    /// Signed `(coef - value) / se`.
    pub t_statistic: f64,
    /// Two-sided standard-normal p-value.
    pub p_value: f64,
}

impl WaldResult {
    pub fn abs_t(&self) -> f64 {
        self.t_statistic.abs()
    }

    pub fn significance(&self) -> Significance {
        Significance::from_p_value(self.p_value)
    }
}

/// t-test of `H0: coefficient[index] = value`.
pub fn wald_t(est: &CointEstimate, index: usize, value: f64) -> Result<WaldResult, CointError> {
    let len = est.coefficients.len();
    if index >= len {
        return Err(CointError::IndexOutOfRange { index, len });
    }
    Ok(wald_test(est.coefficients[index], est.std_errors[index], value, index))
}

/// The same test from a coefficient and its standard error. A zero standard
/// error gives an infinite statistic unless the coefficient equals `value`.
pub fn wald_test(coef: f64, se: f64, value: f64, index: usize) -> WaldResult {
    let diff = coef - value;
    let t = if diff == 0.0 { 0.0 } else { diff / se };
    WaldResult {
        index,
        value,
        t_statistic: t,
        p_value: erfc(t.abs() / std::f64::consts::SQRT_2).clamp(0.0, 1.0),
    }
}

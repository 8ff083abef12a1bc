//! Finite-difference check of the money first-order conditions.
//!
//! At the optimum the marginal rate of substitution between each money and
//! consumption equals that money's opportunity cost:
//! `U_m = oc U_x` and `U_fm = oc* U_x`. [`verify_foc`] places `(m, fm)` at the
//! closed-form optimum and differentiates the utility function numerically,
//! so it checks the closed-form demand against the utility it came from.
//!
//! Each CES nest is differentiated through the monotone transform
//! `T(v) = (v^r - 1) / r`, under which the nest is additively separable.
//! Differencing each one-dimensional term on its own keeps the derivatives
//! accurate when holdings are many orders of magnitude above consumption,
//! where differencing `U` itself drowns the small marginal in rounding.

use super::{check_positive, liquidity, money_demand_exact, optimal_ratio, ModelError, StructuralParams, UNIT_ELASTICITY_TOL};

/// Central-difference step, relative to the point of evaluation.
pub const FD_RELATIVE_STEP: f64 = 1e-6;

/// Normalized residuals `(U_m - oc U_x) / (oc U_x)` and
/// `(U_fm - oc* U_x) / (oc* U_x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FocResiduals {
    pub domestic: f64,
    pub foreign: f64,
    pub m_real: f64,
    pub fm_real: f64,
}

impl FocResiduals {
    pub fn max_abs(&self) -> f64 {
        self.domestic.abs().max(self.foreign.abs())
    }
}

pub fn verify_foc(params: &StructuralParams, oc: f64, oc_star: f64, x_real: f64) -> Result<FocResiduals, ModelError> {
    let m = money_demand_exact(oc, oc_star, x_real, params)?;
    let fm = optimal_ratio(oc, oc_star, params.sigma, params.delta)? * m;
    foc_residuals_at(params, oc, oc_star, x_real, m, fm)
}

/// Residuals at arbitrary holdings `(m_real, fm_real)`.
pub fn foc_residuals_at(
    params: &StructuralParams,
    oc: f64,
    oc_star: f64,
    x_real: f64,
    m_real: f64,
    fm_real: f64,
) -> Result<FocResiduals, ModelError> {
    params.validate()?;
    check_positive("oc", oc)?;
    check_positive("oc*", oc_star)?;
    check_positive("real consumption", x_real)?;
    let StructuralParams {
        theta,
        delta,
        sigma,
        zeta,
        ..
    } = *params;
    if sigma == 0.0 || zeta == 0.0 {
        return Err(ModelError::Numerical("Leontief nests have no marginal rates".into()));
    }
    let l = liquidity(m_real, fm_real, delta, sigma)?;
    let outer = |v: f64| transform_slope(v, zeta);
    let inner = |v: f64| transform_slope(v, sigma);
    // U_L / U_x and the marginal products of liquidity
    let mrs_l = (1.0 - theta) * outer(l)? / (theta * outer(x_real)?);
    let inner_l = inner(l)?;
    let l_m = delta * inner(m_real)? / inner_l;
    let l_fm = (1.0 - delta) * inner(fm_real)? / inner_l;
    Ok(FocResiduals {
        domestic: mrs_l * l_m / oc - 1.0,
        foreign: mrs_l * l_fm / oc_star - 1.0,
        m_real,
        fm_real,
    })
}

/// `T'(v)` for `T(v) = (v^r - 1) / r`, `r = (e - 1) / e`, by central
/// differences; `T = ln` at unit elasticity.
fn transform_slope(v: f64, elasticity: f64) -> Result<f64, ModelError> {
    let r = if (elasticity - 1.0).abs() < UNIT_ELASTICITY_TOL {
        0.0
    } else {
        (elasticity - 1.0) / elasticity
    };
    // the constant in T only matters for accuracy near r = 0; dropping it
    // avoids cancellation when v^r is far from 1
    let near_one = (r * v.ln()).abs() < 1.0;
    let t = |u: f64| match (r == 0.0, near_one) {
        (true, _) => u.ln(),
        (false, true) => (r * u.ln()).exp_m1() / r,
        (false, false) => (r * u.ln()).exp() / r,
    };
    let h = FD_RELATIVE_STEP * v;
    if !(h > 0.0) || v + h == v {
        return Err(ModelError::Numerical(format!("step underflow at {v}")));
    }
    let d = (t(v + h) - t(v - h)) / (2.0 * h);
    if d.is_finite() && d > 0.0 {
        Ok(d)
    } else {
        Err(ModelError::Numerical(format!("marginal at {v} is {d}")))
    }
}

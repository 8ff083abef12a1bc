use super::{check_elasticity, check_positive, check_share, omega_from_structural, ModelError, StructuralParams, UNIT_ELASTICITY_TOL};

/// Two-input CES aggregate `[w a^r + (1-w) b^r]^(1/r)` with `r = (e-1)/e`,
/// evaluated in log space. Elasticity 0 gives `min(a, b)`, elasticity 1 the
/// Cobb-Douglas `a^w b^(1-w)`.
fn ces(a: f64, b: f64, weight: f64, elasticity: f64) -> f64 {
    if elasticity == 0.0 {
        return a.min(b);
    }
    if (elasticity - 1.0).abs() < UNIT_ELASTICITY_TOL {
        return (weight * a.ln() + (1.0 - weight) * b.ln()).exp();
    }
    let r = (elasticity - 1.0) / elasticity;
    let la = weight.ln() + r * a.ln();
    let lb = (1.0 - weight).ln() + r * b.ln();
    let (hi, lo) = if la >= lb { (la, lb) } else { (lb, la) };
    let lse = hi + (lo - hi).exp().ln_1p();
    (lse / r).exp()
}

/// Liquidity produced by domestic and foreign real balances.
pub fn liquidity(m_real: f64, fm_real: f64, delta: f64, sigma: f64) -> Result<f64, ModelError> {
    check_positive("domestic real money", m_real)?;
    check_positive("foreign real money", fm_real)?;
    check_share("delta", delta)?;
    check_elasticity("sigma", sigma)?;
    Ok(ces(m_real, fm_real, delta, sigma))
}

/// Utility of consumption and liquidity.
pub fn utility(x_real: f64, m_real: f64, fm_real: f64, params: &StructuralParams) -> Result<f64, ModelError> {
    params.validate()?;
    check_positive("real consumption", x_real)?;
    let l = liquidity(m_real, fm_real, params.delta, params.sigma)?;
    Ok(ces(x_real, l, params.theta, params.zeta))
}

/// Optimal `S M* / M` given the two opportunity costs:
/// `[((1 - delta) / delta) (oc / oc*)]^sigma`.
pub fn optimal_ratio(oc: f64, oc_star: f64, sigma: f64, delta: f64) -> Result<f64, ModelError> {
    check_positive("oc", oc)?;
    check_positive("oc*", oc_star)?;
    check_share("delta", delta)?;
    check_elasticity("sigma", sigma)?;
    Ok((sigma * (((1.0 - delta) / delta).ln() + oc.ln() - oc_star.ln())).exp())
}

/// `ln B / (sigma - 1)` with `B = delta + (1 - delta) exp((sigma - 1) c)`,
/// continuous through sigma = 1 where it equals `(1 - delta) c`.
pub(crate) fn log_b_over_sigma_minus_one(delta: f64, sigma: f64, c: f64) -> f64 {
    let d = sigma - 1.0;
    if d.abs() < UNIT_ELASTICITY_TOL {
        (1.0 - delta) * c
    } else {
        ((1.0 - delta) * (d * c).exp_m1()).ln_1p() / d
    }
}

/// Natural log of real money demand `M/P`.
///
/// Uses `sigma (zeta-1)/(sigma-1) ln delta + (zeta-sigma)/(sigma-1) ln{1 + psi q^(sigma-1)}
/// = zeta ln delta + (zeta - sigma) ln B / (sigma - 1)`, which stays finite at
/// sigma = 1.
pub fn log_money_demand_exact(oc: f64, oc_star: f64, x_real: f64, params: &StructuralParams) -> Result<f64, ModelError> {
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
    let c = ((1.0 - delta) / delta).ln() + oc.ln() - oc_star.ln();
    Ok(zeta * ((1.0 - theta) / theta).ln() - zeta * oc.ln()
        + zeta * delta.ln()
        + (zeta - sigma) * log_b_over_sigma_minus_one(delta, sigma, c)
        + x_real.ln())
}

/// Real money demand `M/P` at the optimum.
pub fn money_demand_exact(oc: f64, oc_star: f64, x_real: f64, params: &StructuralParams) -> Result<f64, ModelError> {
    Ok(log_money_demand_exact(oc, oc_star, x_real, params)?.exp())
}

/// Log real money demand from the first-order expansion in the spread
/// `ln oc - ln oc*` around the long-run spread `params.s`.
pub fn money_demand_linearized(oc: f64, oc_star: f64, x_real: f64, params: &StructuralParams) -> Result<f64, ModelError> {
    check_positive("oc", oc)?;
    check_positive("oc*", oc_star)?;
    check_positive("real consumption", x_real)?;
    let w = omega_from_structural(params)?;
    Ok(w.omega0 - w.omega1 * oc.ln() + w.omega2 * (oc.ln() - oc_star.ln()) + w.omega3 * x_real.ln())
}

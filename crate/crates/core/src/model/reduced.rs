//! Maps between the deep parameters and the two cointegrating vectors.
//!
//! Relative demand:
//! `ln(M / S M*) = kappa0 - kappa1 (ln oc - ln oc*)`, with
//! `kappa0 = sigma ln(delta / (1 - delta))` and `kappa1 = sigma`.
//!
//! Real money demand:
//! `ln(M/P) = omega0 - omega1 ln oc + omega2 (ln oc - ln oc*) + omega3 ln(X/P)`, with
//! `omega1 = zeta`, `omega3 = 1` and `omega0`, `omega2` from the first-order
//! expansion of the exact demand around the long-run spread `s`.

use super::ces::log_b_over_sigma_minus_one;
use super::{check_elasticity, check_share, ModelError, StructuralParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedForm15 {
    pub kappa0: f64,
    pub kappa1: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedForm20 {
    pub omega0: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub omega3: f64,
}

pub fn kappa_from_structural(sigma: f64, delta: f64) -> Result<ReducedForm15, ModelError> {
    check_share("delta", delta)?;
    check_elasticity("sigma", sigma)?;
    Ok(ReducedForm15 {
        kappa0: sigma * (delta / (1.0 - delta)).ln(),
        kappa1: sigma,
    })
}

/// Inverts the relative-demand identities: `sigma = kappa1`,
/// `delta = logistic(kappa0 / kappa1)`. Requires `kappa1 > 0`.
pub fn structural_from_kappa(k: ReducedForm15) -> Result<(f64, f64), ModelError> {
    if !k.kappa0.is_finite() {
        return Err(ModelError::Inversion(format!("kappa0 = {} is not finite", k.kappa0)));
    }
    if !(k.kappa1.is_finite() && k.kappa1 > 0.0) {
        return Err(ModelError::Inversion(format!(
            "kappa1 = {} is not a positive elasticity of substitution",
            k.kappa1
        )));
    }
    let sigma = k.kappa1;
    let r = k.kappa0 / sigma;
    // logistic, written to avoid overflow for large |r|
    let delta = if r >= 0.0 {
        1.0 / (1.0 + (-r).exp())
    } else {
        let e = r.exp();
        e / (1.0 + e)
    };
    if !(delta > 0.0 && delta < 1.0) {
        return Err(ModelError::Inversion(format!(
            "implied delta is not interior (kappa0 / kappa1 = {r})"
        )));
    }
    Ok((sigma, delta))
}

/// Cointegrating vector of the linearized real money demand.
///
/// At `|sigma - 1| < UNIT_ELASTICITY_TOL` the Cobb-Douglas limit is returned.
pub fn omega_from_structural(params: &StructuralParams) -> Result<ReducedForm20, ModelError> {
    params.validate()?;
    let StructuralParams {
        theta,
        delta,
        sigma,
        zeta,
        s,
        ..
    } = *params;
    // c_s = ln((1 - delta) / delta) + s;  psi e^{(sigma-1)s} = (1-delta)/delta * e^{(sigma-1) c_s}
    let c_s = ((1.0 - delta) / delta).ln() + s;
    let log_b = log_b_over_sigma_minus_one(delta, sigma, c_s);
    // weight w = psi e / (1 + psi e), computed as a logistic in log space
    let log_psi_e = sigma * ((1.0 - delta) / delta).ln() + (sigma - 1.0) * s;
    let w = if log_psi_e >= 0.0 {
        1.0 / (1.0 + (-log_psi_e).exp())
    } else {
        let e = log_psi_e.exp();
        e / (1.0 + e)
    };
    let omega0 = zeta * ((1.0 - theta) / theta).ln() + zeta * delta.ln() + (zeta - sigma) * (log_b - s * w);
    Ok(ReducedForm20 {
        omega0,
        omega1: zeta,
        omega2: (zeta - sigma) * w,
        omega3: 1.0,
    })
}

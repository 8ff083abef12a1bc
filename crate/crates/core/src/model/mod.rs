//! The CES money-demand model.
//!
//! Domestic real money `m` and the domestic-currency value of foreign real
//! money `fm` produce liquidity through a CES aggregator with share `delta`
//! and elasticity `sigma`; liquidity and real consumption `x` enter a second
//! CES aggregator with share `theta` and elasticity `zeta`. Opportunity costs
//! are `oc = (i + phi) / (1 + i)`.
//!
//! Unit elasticities are removable singularities: whenever `|sigma - 1|` or
//! `|zeta - 1|` is below [`UNIT_ELASTICITY_TOL`] the Cobb-Douglas closed form
//! is evaluated instead.

mod ces;
mod foc;
mod reduced;
mod sim;

use std::fmt;

use thiserror::Error;

pub use ces::{
    liquidity, log_money_demand_exact, money_demand_exact, money_demand_linearized,
    optimal_ratio, utility,
};
pub use foc::{foc_residuals_at, verify_foc, FocResiduals, FD_RELATIVE_STEP};
pub use reduced::{
    kappa_from_structural, omega_from_structural, structural_from_kappa, ReducedForm15,
    ReducedForm20,
};
pub use sim::{simulate_triangular, Ar1, ErrorModel, SimSpec};

pub const UNIT_ELASTICITY_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("cannot invert reduced form: {0}")]
    Inversion(String),
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("invalid simulation spec: {0}")]
    Spec(String),
}

/// Deep parameters of the model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StructuralParams {
    /// Share of consumption in utility, in (0, 1).
    pub theta: f64,
    /// Share of domestic money in liquidity, in (0, 1).
    pub delta: f64,
    /// Elasticity of substitution between the two moneys, >= 0.
    pub sigma: f64,
    /// Elasticity of substitution between consumption and liquidity, >= 0.
    pub zeta: f64,
    /// Monthly proportional holding cost.
    pub phi: f64,
    /// Long-run log opportunity-cost spread `ln oc - ln oc*`.
    pub s: f64,
}

impl StructuralParams {
    pub fn new(theta: f64, delta: f64, sigma: f64, zeta: f64, phi: f64, s: f64) -> Result<Self, ModelError> {
        let p = StructuralParams {
            theta,
            delta,
            sigma,
            zeta,
            phi,
            s,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        check_share("theta", self.theta)?;
        check_share("delta", self.delta)?;
        check_elasticity("sigma", self.sigma)?;
        check_elasticity("zeta", self.zeta)?;
        if !(self.phi.is_finite() && self.phi >= 0.0) {
            return Err(ModelError::Domain(format!("phi must be >= 0, got {}", self.phi)));
        }
        if !self.s.is_finite() {
            return Err(ModelError::Domain("long-run spread must be finite".into()));
        }
        Ok(())
    }

    /// `(sigma - 1) / sigma`; `None` at sigma = 0.
    pub fn gamma(&self) -> Option<f64> {
        (self.sigma > 0.0).then(|| (self.sigma - 1.0) / self.sigma)
    }

    /// `(zeta - 1) / zeta`; `None` at zeta = 0.
    pub fn eta(&self) -> Option<f64> {
        (self.zeta > 0.0).then(|| (self.zeta - 1.0) / self.zeta)
    }

    /// `((1 - delta) / delta)^sigma`.
    pub fn psi(&self) -> f64 {
        ((1.0 - self.delta) / self.delta).powf(self.sigma)
    }

    pub fn currency_relation(&self) -> Substitutability {
        Substitutability::from_elasticity(self.sigma)
    }
}

/// Reading of an elasticity of substitution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Substitutability {
    Complementarity,
    Unitary,
    Substitutability,
}

impl Substitutability {
    pub fn from_elasticity(e: f64) -> Self {
        if (e - 1.0).abs() < UNIT_ELASTICITY_TOL {
            Substitutability::Unitary
        } else if e < 1.0 {
            Substitutability::Complementarity
        } else {
            Substitutability::Substitutability
        }
    }
}

impl fmt::Display for Substitutability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Substitutability::Complementarity => "complementarity",
            Substitutability::Unitary => "unitary (Cobb-Douglas)",
            Substitutability::Substitutability => "substitutability",
        })
    }
}

pub(crate) fn check_share(name: &str, v: f64) -> Result<(), ModelError> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(ModelError::Domain(format!("{name} must lie in (0, 1), got {v}")))
    }
}

pub(crate) fn check_elasticity(name: &str, v: f64) -> Result<(), ModelError> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(ModelError::Domain(format!("{name} must be finite and >= 0, got {v}")))
    }
}

pub(crate) fn check_positive(name: &str, v: f64) -> Result<(), ModelError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(ModelError::Domain(format!("{name} must be positive, got {v}")))
    }
}

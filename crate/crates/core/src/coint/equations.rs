//! Both cointegrating equations of the model, each estimated by DOLS and
//! FMOLS.
//!
//! Relative demand regresses `ln(M / S M*)` on `-spread`, so the slope is
//! `kappa1` directly. Real money demand regresses `ln(M/P)` on
//! `(-ln oc, spread, ln scale)`, so the slopes are `(omega1, omega2, omega3)`.

use nalgebra::DMatrix;

use super::{dols, fmols, hansen_lc, wald_t, CointError, CointEstimate, LcResult, WaldResult};
use crate::model::{structural_from_kappa, ModelError, ReducedForm15, ReducedForm20};
use crate::timeseries::{AlignedPanel, Period};

#[derive(Debug, Clone, PartialEq)]
pub struct Eq15Columns {
    /// `ln(M / S M*)`.
    pub ratio: String,
    /// `ln oc - ln oc*`.
    pub spread: String,
}

impl Default for Eq15Columns {
    fn default() -> Self {
        Eq15Columns {
            ratio: "ln_ratio".into(),
            spread: "spread".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Eq20Columns {
    /// `ln(M/P)`.
    pub money: String,
    pub ln_oc: String,
    pub spread: String,
    /// Log real scale variable.
    pub scale: String,
}

#[derive(Debug)]
pub struct Eq15Fit {
    pub estimate: CointEstimate,
    pub lc: Result<LcResult, CointError>,
    /// `H0: kappa1 = 1`.
    pub wald_kappa1: WaldResult,
    /// `(sigma, delta)`, or why the estimate cannot be inverted.
    pub structural: Result<(f64, f64), ModelError>,
}

impl Eq15Fit {
    pub fn kappa(&self) -> ReducedForm15 {
        ReducedForm15 {
            kappa0: self.estimate.coefficients[0],
            kappa1: self.estimate.coefficients[1],
        }
    }
}

#[derive(Debug)]
pub struct Eq15Result {
    pub start: Period,
    pub end: Period,
    pub dols: Eq15Fit,
    pub fmols: Eq15Fit,
}

#[derive(Debug)]
pub struct Eq20Fit {
    pub estimate: CointEstimate,
    pub lc: Result<LcResult, CointError>,
    /// `H0: omega1 = 1`.
    pub wald_omega1: WaldResult,
    /// `H0: omega3 = 1`.
    pub wald_omega3: WaldResult,
}

impl Eq20Fit {
    pub fn omega(&self) -> ReducedForm20 {
        let c = &self.estimate.coefficients;
        ReducedForm20 {
            omega0: c[0],
            omega1: c[1],
            omega2: c[2],
            omega3: c[3],
        }
    }
}

#[derive(Debug)]
pub struct Eq20Result {
    pub start: Period,
    pub end: Period,
    pub dols: Eq20Fit,
    pub fmols: Eq20Fit,
}

pub fn estimate_eq15(panel: &AlignedPanel, cols: &Eq15Columns, max_k: Option<usize>) -> Result<Eq15Result, CointError> {
    let y = panel.require(&cols.ratio)?;
    let spread = panel.require(&cols.spread)?;
    let x = DMatrix::from_fn(panel.len(), 1, |r, _| -spread[r]);
    let fit = |estimate: CointEstimate| -> Result<Eq15Fit, CointError> {
        let lc = hansen_lc(&estimate, &x);
        let wald_kappa1 = wald_t(&estimate, 1, 1.0)?;
        let structural = structural_from_kappa(ReducedForm15 {
            kappa0: estimate.coefficients[0],
            kappa1: estimate.coefficients[1],
        });
        Ok(Eq15Fit {
            estimate,
            lc,
            wald_kappa1,
            structural,
        })
    };
    Ok(Eq15Result {
        start: panel.start(),
        end: panel.end(),
        dols: fit(dols(y, &x, max_k)?)?,
        fmols: fit(fmols(y, &x)?)?,
    })
}

pub fn estimate_eq20(panel: &AlignedPanel, cols: &Eq20Columns, max_k: Option<usize>) -> Result<Eq20Result, CointError> {
    let y = panel.require(&cols.money)?;
    let ln_oc = panel.require(&cols.ln_oc)?;
    let spread = panel.require(&cols.spread)?;
    let scale = panel.require(&cols.scale)?;
    let x = DMatrix::from_fn(panel.len(), 3, |r, c| match c {
        0 => -ln_oc[r],
        1 => spread[r],
        _ => scale[r],
    });
    let fit = |estimate: CointEstimate| -> Result<Eq20Fit, CointError> {
        Ok(Eq20Fit {
            lc: hansen_lc(&estimate, &x),
            wald_omega1: wald_t(&estimate, 1, 1.0)?,
            wald_omega3: wald_t(&estimate, 3, 1.0)?,
            estimate,
        })
    };
    Ok(Eq20Result {
        start: panel.start(),
        end: panel.end(),
        dols: fit(dols(y, &x, max_k)?)?,
        fmols: fit(fmols(y, &x)?)?,
    })
}

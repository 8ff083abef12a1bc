//! Monte Carlo evaluation of the cointegration estimators on simulated
//! triangular systems.
//!
//! Replication `r` simulates with seed `base_seed + r`; replications run in
//! parallel and are merged in index order, so summaries do not depend on the
//! thread count.

use std::io::Write;

use nalgebra::DMatrix;
use rayon::prelude::*;
use thiserror::Error;

use crate::coint::{dols, fmols, hansen_lc, wald_t, CointError, CointEstimate};
use crate::kernel::ols;
use crate::model::{simulate_triangular, SimSpec};

pub const MIN_REPLICATIONS: usize = 50;
const LEVEL: f64 = 0.05;

#[derive(Debug, Error)]
pub enum McError {
    #[error("at least {MIN_REPLICATIONS} replications are required, got {0}")]
    TooFewReplications(usize),
    #[error("replication {index}: {source}")]
    Replication { index: usize, source: Box<dyn std::error::Error + Send + Sync> },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Runs `f(r)` for `r in 0..n` in parallel, returning results in index order.
pub fn replicate<T, E, F>(n: usize, f: F) -> Result<Vec<T>, E>
where
    T: Send,
    E: Send,
    F: Fn(usize) -> Result<T, E> + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect::<Vec<_>>().into_iter().collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSummary {
    pub estimator: &'static str,
    pub coefficient: String,
    pub truth: f64,
    pub mean: f64,
    pub bias: f64,
    pub rmse: f64,
    /// Standard error of `mean` across replications.
    pub mc_se: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RejectionSummary {
    pub estimator: &'static str,
    pub test: String,
    pub nominal: f64,
    pub rate: f64,
    pub mc_se: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct McSummary {
    pub replications: usize,
    pub coefficients: Vec<CoefficientSummary>,
    pub rejections: Vec<RejectionSummary>,
}

const ESTIMATORS: [&str; 3] = ["OLS", "DOLS", "FMOLS"];

struct Replication {
    /// Slopes per estimator.
    slopes: [Vec<f64>; 3],
    /// L_c rejection at 5% for DOLS and FMOLS.
    lc_reject: [bool; 2],
    /// Wald rejection of the true slope at 5%, DOLS and FMOLS.
    wald_reject: [Vec<bool>; 2],
}

fn one(spec: &SimSpec, max_k: Option<usize>) -> Result<Replication, Box<dyn std::error::Error + Send + Sync>> {
    let panel = simulate_triangular(spec)?;
    let y = panel.require("y1")?.to_vec();
    let cols: Vec<&[f64]> = (1..=spec.m)
        .map(|i| panel.require(&format!("Y3_{i}")))
        .collect::<Result<_, _>>()?;
    let x = DMatrix::from_fn(panel.len(), spec.m, |r, c| cols[c][r]);
    let static_fit = ols(&y, &x, true)?;
    let d = dols(&y, &x, max_k)?;
    let f = fmols(&y, &x)?;
    let lc = |e: &CointEstimate| -> Result<bool, CointError> { Ok(hansen_lc(e, &x)?.p_band.rejects_at(LEVEL)) };
    let wald = |e: &CointEstimate| -> Result<Vec<bool>, CointError> {
        (0..spec.m)
            .map(|i| Ok(wald_t(e, i + 1, spec.a1[i])?.p_value < LEVEL))
            .collect()
    };
    Ok(Replication {
        slopes: [static_fit.coefficients[1..].to_vec(), d.slopes().to_vec(), f.slopes().to_vec()],
        lc_reject: [lc(&d)?, lc(&f)?],
        wald_reject: [wald(&d)?, wald(&f)?],
    })
}

/// Bias, RMSE and rejection rates of OLS, DOLS and FMOLS for the first
/// cointegrating equation of `spec`.
pub fn run_montecarlo(spec: &SimSpec, replications: usize, max_k: Option<usize>) -> Result<McSummary, McError> {
    if replications < MIN_REPLICATIONS {
        return Err(McError::TooFewReplications(replications));
    }
    spec.validate().map_err(|e| McError::Replication { index: 0, source: Box::new(e) })?;
    let reps = replicate(replications, |r| {
        let s = spec.clone().with_seed(spec.seed.wrapping_add(r as u64));
        one(&s, max_k).map_err(|source| McError::Replication { index: r, source })
    })?;
    let n = replications as f64;

    let mut coefficients = Vec::new();
    for (e, name) in ESTIMATORS.iter().enumerate() {
        for i in 0..spec.m {
            let draws: Vec<f64> = reps.iter().map(|r| r.slopes[e][i]).collect();
            let truth = spec.a1[i];
            let mean = draws.iter().sum::<f64>() / n;
            let var = draws.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
            let mse = draws.iter().map(|v| (v - truth).powi(2)).sum::<f64>() / n;
            coefficients.push(CoefficientSummary {
                estimator: name,
                coefficient: format!("a1_{}", i + 1),
                truth,
                mean,
                bias: mean - truth,
                rmse: mse.sqrt(),
                mc_se: (var / n).sqrt(),
            });
        }
    }

    let rate = |hits: usize| {
        let p = hits as f64 / n;
        (p, (p * (1.0 - p) / n).sqrt())
    };
    let mut rejections = Vec::new();
    for (e, name) in ESTIMATORS[1..].iter().enumerate() {
        let (r, se) = rate(reps.iter().filter(|x| x.lc_reject[e]).count());
        rejections.push(RejectionSummary {
            estimator: name,
            test: "lc".into(),
            nominal: LEVEL,
            rate: r,
            mc_se: se,
        });
        for i in 0..spec.m {
            let (r, se) = rate(reps.iter().filter(|x| x.wald_reject[e][i]).count());
            rejections.push(RejectionSummary {
                estimator: name,
                test: format!("wald_a1_{}", i + 1),
                nominal: LEVEL,
                rate: r,
                mc_se: se,
            });
        }
    }
    Ok(McSummary {
        replications,
        coefficients,
        rejections,
    })
}

impl McSummary {
    /// `kind,estimator,target,truth,estimate,bias,rmse,mc_se`; rejection rows
    /// put the nominal level in `truth` and leave `rmse` empty.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), McError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["kind", "estimator", "target", "truth", "estimate", "bias", "rmse", "mc_se"])?;
        let f = |v: f64| format!("{v:.6}");
        for c in &self.coefficients {
            w.write_record([
                "coefficient",
                c.estimator,
                &c.coefficient,
                &f(c.truth),
                &f(c.mean),
                &f(c.bias),
                &f(c.rmse),
                &f(c.mc_se),
            ])?;
        }
        for r in &self.rejections {
            w.write_record([
                "rejection",
                r.estimator,
                &r.test,
                &f(r.nominal),
                &f(r.rate),
                &f(r.rate - r.nominal),
                "",
                &f(r.mc_se),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

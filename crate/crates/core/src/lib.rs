//! Toolkit for open-economy money demand with currency substitution.
//!
//! The crate is organised in layers:
//!
//! * [`timeseries`]: dated series, CSV ingestion and the rate/log/spline
//!   transforms that build regression variables.
//! * [`model`]: the CES utility and liquidity functions, exact and linearized
//!   money demand, the maps between structural and cointegrating parameters,
//!   and a simulator for triangular cointegrated systems.
//! * [`kernel`], [`unitroot`] and [`coint`]: OLS, Bartlett long-run
//!   covariance, ADF/PP tests, DOLS/FMOLS, Hansen's L_c and Wald tests.
//! * [`montecarlo`]: seeded, parallel replication of the estimators.
//! * [`report`]: plain-text and CSV renderings of the estimation tables.

pub use nalgebra;

pub mod timeseries;
pub mod kernel;
pub mod model;
pub mod montecarlo;
pub mod report;
pub mod coint;
pub mod significance;
pub mod unitroot;

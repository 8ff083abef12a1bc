//! Command-line pipeline: CSV ingestion, transforms, unit-root tests,
//! cointegration estimates, simulation and Monte Carlo.

pub mod commands;
pub mod config;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "MDCOINT_OUT_DIR";

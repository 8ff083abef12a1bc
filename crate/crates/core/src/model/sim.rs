//! Synthetic data from a triangular cointegrated system with two
//! cointegrating regressions:
//!
//! ```text
//! y1_t = mu1 + a1' Y3_t + z1_t
//! y2_t = mu2 + a2' Y3_t + z2_t
//! dY3_t = mu3 + Z3_t
//! ```
//!
//! Every disturbance is a zero-mean AR(1) started from its stationary
//! distribution. The innovations of `z1` (and `z2`) may be correlated with the
//! regressor innovations to make the regressors endogenous.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::ModelError;
use crate::timeseries::{AlignedPanel, Period};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ar1 {
    pub ar: f64,
    pub sd: f64,
}

impl Ar1 {
    pub fn new(ar: f64, sd: f64) -> Self {
        Ar1 { ar, sd }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorModel {
    pub z1: Ar1,
    pub z2: Ar1,
    /// One entry per regressor.
    pub z3: Vec<Ar1>,
    /// Correlation between the `z1` innovation and the normalized sum of the
    /// standardized regressor innovations. With one regressor this is the
    /// plain correlation.
    #[serde(default)]
    pub corr_z1_z3: f64,
    #[serde(default)]
    pub corr_z2_z3: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimSpec {
    /// Number of I(1) regressors.
    pub m: usize,
    pub a1: Vec<f64>,
    pub a2: Vec<f64>,
    pub mu1: f64,
    pub mu2: f64,
    pub mu3: Vec<f64>,
    /// Sample length.
    #[serde(rename = "T", alias = "t")]
    pub t: usize,
    pub errors: ErrorModel,
    pub seed: u64,
    /// First month of the generated panel, `YYYY-MM`.
    #[serde(default = "default_start")]
    pub start: String,
}

fn default_start() -> String {
    "2000-01".to_string()
}

impl SimSpec {
    /// A design with every disturbance AR(1) with coefficient `ar` and unit
    /// innovation variance, zero intercepts and no drift.
    pub fn ar1_design(a1: Vec<f64>, a2: Vec<f64>, t: usize, ar: f64, seed: u64) -> Self {
        let m = a1.len();
        SimSpec {
            m,
            a1,
            a2,
            mu1: 0.0,
            mu2: 0.0,
            mu3: vec![0.0; m],
            t,
            errors: ErrorModel {
                z1: Ar1::new(ar, 1.0),
                z2: Ar1::new(ar, 1.0),
                z3: vec![Ar1::new(ar, 1.0); m],
                corr_z1_z3: 0.0,
                corr_z2_z3: 0.0,
            },
            seed,
            start: default_start(),
        }
    }

    /// Same design with both cointegrating errors switched off.
    pub fn noiseless(mut self) -> Self {
        self.errors.z1.sd = 0.0;
        self.errors.z2.sd = 0.0;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn start_period(&self) -> Result<Period, ModelError> {
        self.start
            .parse()
            .ok()
            .filter(|p: &Period| p.frequency() == crate::timeseries::Frequency::Monthly)
            .ok_or_else(|| ModelError::Spec(format!("start `{}` is not a YYYY-MM month", self.start)))
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let err = |s: String| Err(ModelError::Spec(s));
        if self.m == 0 {
            return err("at least one I(1) regressor is required".into());
        }
        for (name, len) in [
            ("a1", self.a1.len()),
            ("a2", self.a2.len()),
            ("mu3", self.mu3.len()),
            ("errors.z3", self.errors.z3.len()),
        ] {
            if len != self.m {
                return err(format!("{name} has length {len}, expected m = {}", self.m));
            }
        }
        if self.t < 50 {
            return err(format!("T = {} is below the minimum of 50", self.t));
        }
        let finite = self
            .a1
            .iter()
            .chain(&self.a2)
            .chain(&self.mu3)
            .chain([&self.mu1, &self.mu2])
            .all(|v| v.is_finite());
        if !finite {
            return err("coefficients must be finite".into());
        }
        let mut processes = vec![("z1", self.errors.z1), ("z2", self.errors.z2)];
        processes.extend(self.errors.z3.iter().map(|p| ("z3", *p)));
        for (i, (name, p)) in processes.iter().enumerate() {
            if !(p.ar.abs() < 1.0) {
                return err(format!("{name}: AR coefficient {} is not stationary", p.ar));
            }
            // cointegrating errors may be switched off; regressor innovations may not
            let ok = if i < 2 { p.sd >= 0.0 } else { p.sd > 0.0 };
            if !(ok && p.sd.is_finite()) {
                return err(format!("{name}: invalid innovation standard deviation {}", p.sd));
            }
        }
        for c in [self.errors.corr_z1_z3, self.errors.corr_z2_z3] {
            if !(c.abs() <= 1.0) {
                return err(format!("correlation {c} outside [-1, 1]"));
            }
        }
        self.start_period()?;
        Ok(())
    }

    pub fn from_toml_str(s: &str) -> Result<Self, ModelError> {
        let spec: SimSpec = toml::from_str(s).map_err(|e| ModelError::Spec(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_toml_string(&self) -> Result<String, ModelError> {
        toml::to_string(self).map_err(|e| ModelError::Spec(e.to_string()))
    }

    /// Column names of the simulated panel.
    pub fn column_names(&self) -> Vec<String> {
        let mut names = vec!["y1".to_string(), "y2".to_string()];
        names.extend((1..=self.m).map(|i| format!("Y3_{i}")));
        names
    }
}

struct ArState {
    ar: f64,
    sd: f64,
    value: f64,
    started: bool,
}

impl ArState {
    fn new(p: Ar1) -> Self {
        ArState {
            ar: p.ar,
            sd: p.sd,
            value: 0.0,
            started: false,
        }
    }

    /// Advances with a unit-variance shock `e`.
    fn step(&mut self, e: f64) -> f64 {
        self.value = if self.started {
            self.ar * self.value + self.sd * e
        } else {
            self.started = true;
            self.sd * e / (1.0 - self.ar * self.ar).sqrt()
        };
        self.value
    }
}

/// Simulates the triangular system. Output is fully determined by `spec`
/// (including its seed).
pub fn simulate_triangular(spec: &SimSpec) -> Result<AlignedPanel, ModelError> {
    spec.validate()?;
    let m = spec.m;
    let t_len = spec.t;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut normal = || -> f64 { StandardNormal.sample(&mut rng) };

    let mut z1 = ArState::new(spec.errors.z1);
    let mut z2 = ArState::new(spec.errors.z2);
    let mut z3: Vec<ArState> = spec.errors.z3.iter().map(|p| ArState::new(*p)).collect();
    let (c1, c2) = (spec.errors.corr_z1_z3, spec.errors.corr_z2_z3);
    let scale = (m as f64).sqrt();

    let mut y1 = Vec::with_capacity(t_len);
    let mut y2 = Vec::with_capacity(t_len);
    let mut levels = vec![Vec::with_capacity(t_len); m];
    let mut current = vec![0.0; m];
    let mut xi = vec![0.0; m];
    for _ in 0..t_len {
        for x in xi.iter_mut() {
            *x = normal();
        }
        let common = xi.iter().sum::<f64>() / scale;
        let e1 = c1 * common + (1.0 - c1 * c1).sqrt() * normal();
        let e2 = c2 * common + (1.0 - c2 * c2).sqrt() * normal();
        for i in 0..m {
            current[i] += spec.mu3[i] + z3[i].step(xi[i]);
            levels[i].push(current[i]);
        }
        let d1 = z1.step(e1);
        let d2 = z2.step(e2);
        let fit1: f64 = spec.a1.iter().zip(&current).map(|(a, y)| a * y).sum();
        let fit2: f64 = spec.a2.iter().zip(&current).map(|(a, y)| a * y).sum();
        y1.push(spec.mu1 + fit1 + d1);
        y2.push(spec.mu2 + fit2 + d2);
    }

    let names = spec.column_names();
    let mut columns = vec![(names[0].clone(), y1), (names[1].clone(), y2)];
    columns.extend(names[2..].iter().cloned().zip(levels));
    AlignedPanel::new(spec.start_period()?, columns).map_err(|e| ModelError::Spec(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> SimSpec {
        SimSpec::ar1_design(vec![-0.5, 1.2], vec![0.3, 0.7], 200, 0.5, 11)
    }

    #[test]
    fn deterministic_given_seed() {
        let a = simulate_triangular(&spec()).unwrap();
        let b = simulate_triangular(&spec()).unwrap();
        assert_eq!(a, b);
        let c = simulate_triangular(&spec().with_seed(12)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn noiseless_cointegration_is_exact() {
        let mut s = spec().noiseless();
        s.mu1 = 0.7;
        s.mu3 = vec![0.01, -0.02];
        let p = simulate_triangular(&s).unwrap();
        let y1 = p.column("y1").unwrap();
        let x1 = p.column("Y3_1").unwrap();
        let x2 = p.column("Y3_2").unwrap();
        for t in 0..p.len() {
            assert_eq!(y1[t] - s.mu1 - (s.a1[0] * x1[t] + s.a1[1] * x2[t]), 0.0);
        }
    }

    #[test]
    fn columns_and_start() {
        let p = simulate_triangular(&spec()).unwrap();
        assert_eq!(p.names(), &["y1", "y2", "Y3_1", "Y3_2"]);
        assert_eq!(p.len(), 200);
        assert_eq!(p.start(), Period::monthly(2000, 1));
    }

    #[test]
    fn invalid_specs() {
        let mut s = spec();
        s.t = 49;
        assert!(matches!(simulate_triangular(&s), Err(ModelError::Spec(_))));
        let mut s = spec();
        s.errors.z1.ar = 1.0;
        assert!(s.validate().is_err());
        let mut s = spec();
        s.errors.z3[0].sd = 0.0;
        assert!(s.validate().is_err());
        let mut s = spec();
        s.a2.pop();
        assert!(s.validate().is_err());
        let mut s = spec();
        s.errors.corr_z1_z3 = 1.5;
        assert!(s.validate().is_err());
    }

    #[test]
    fn toml_round_trip() {
        let mut s = spec();
        s.errors.corr_z1_z3 = 0.8;
        let text = s.to_toml_string().unwrap();
        assert!(text.contains("[errors.z1]"));
        assert_eq!(SimSpec::from_toml_str(&text).unwrap(), s);
    }

    #[test]
    fn endogenous_innovations_are_correlated() {
        let mut s = SimSpec::ar1_design(vec![1.0], vec![1.0], 5000, 0.0, 5);
        s.errors.corr_z1_z3 = 0.8;
        let p = simulate_triangular(&s).unwrap();
        let y1 = p.column("y1").unwrap();
        let x = p.column("Y3_1").unwrap();
        // z1 = y1 - x, dx = Z3 (AR coefficient 0 makes both white noise)
        let z: Vec<f64> = y1.iter().zip(x).map(|(a, b)| a - b).collect();
        let dx: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let z = &z[1..];
        let n = z.len() as f64;
        let mean = |v: &[f64]| v.iter().sum::<f64>() / n;
        let (mz, mx) = (mean(z), mean(&dx));
        let cov: f64 = z.iter().zip(&dx).map(|(a, b)| (a - mz) * (b - mx)).sum::<f64>() / n;
        let vz: f64 = z.iter().map(|a| (a - mz).powi(2)).sum::<f64>() / n;
        let vx: f64 = dx.iter().map(|b| (b - mx).powi(2)).sum::<f64>() / n;
        let corr = cov / (vz * vx).sqrt();
        assert!((corr - 0.8).abs() < 0.03, "corr {corr}");
    }
}

//! Seeded raw-data fixtures in the shape the pipeline ingests.
#![allow(dead_code)]

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub const PHI: f64 = 0.00082953;

pub struct Fixture {
    pub months: usize,
    pub seed: u64,
    /// Drivers mean-revert instead of wandering.
    pub stationary: bool,
}

impl Fixture {
    pub fn new(months: usize, seed: u64) -> Self {
        Fixture {
            months,
            seed,
            stationary: false,
        }
    }
}

struct Driver {
    level: f64,
    mean: f64,
    ar: f64,
    drift: f64,
    sd: f64,
}

impl Driver {
    fn step(&mut self, e: f64) -> f64 {
        if self.ar < 1.0 {
            self.level = self.mean + self.ar * (self.level - self.mean) + self.sd * e;
        } else {
            self.level += self.drift + self.sd * e;
        }
        self.level
    }
}

fn month_label(i: usize) -> String {
    format!("{}-{:02}", 2000 + i / 12, i % 12 + 1)
}

/// Writes `monthly.csv` (i, i_star, fx_share, cpi, m2, m1, ip) and
/// `quarterly.csv` (CONS) into `dir` and returns their paths.
pub fn write_raw(dir: &Path, f: &Fixture) -> (PathBuf, PathBuf) {
    let mut rng = ChaCha8Rng::seed_from_u64(f.seed);
    let mut n = || -> f64 { StandardNormal.sample(&mut rng) };
    let ar = if f.stationary { 0.5 } else { 1.0 };
    let mut ln_i = Driver { level: 6f64.ln(), mean: 6f64.ln(), ar, drift: 0.0, sd: 0.03 };
    let mut ln_is = Driver { level: 3f64.ln(), mean: 3f64.ln(), ar, drift: 0.0, sd: 0.03 };
    let mut ln_cons = Driver { level: 1000f64.ln(), mean: 1000f64.ln(), ar, drift: 0.002, sd: 0.01 };
    let mut ln_ip = Driver { level: 100f64.ln(), mean: 100f64.ln(), ar, drift: 0.001, sd: 0.01 };
    let (mut z1, mut z2, mut z3) = (0.0, 0.0, 0.0);
    let mut ln_cpi = 100f64.ln();

    let mut monthly = String::from("date,i,i_star,fx_share,cpi,m2,m1,ip\n");
    let mut cons_nominal = Vec::with_capacity(f.months);
    for t in 0..f.months {
        let i = ln_i.step(n()).exp();
        let is = ln_is.step(n()).exp();
        let real_cons = ln_cons.step(n());
        let ip = ln_ip.step(n()).exp();
        ln_cpi += 0.003 + 0.002 * n();
        z1 = 0.5 * z1 + 0.05 * n();
        z2 = 0.5 * z2 + 0.03 * n();
        z3 = 0.5 * z3 + 0.03 * n();

        let oc = |annual: f64| {
            let r = ((annual / 100.0).ln_1p() / 12.0).exp_m1();
            (r + PHI) / (1.0 + r)
        };
        let (ln_oc, ln_oc_s) = (oc(i).ln(), oc(is).ln());
        let spread = ln_oc - ln_oc_s;
        let ratio = (2.2 - 0.48 * spread + z1).exp();
        let share = 1.0 / (1.0 + ratio);
        let ln_m2 = 1.0 - 0.4 * ln_oc + 0.1 * spread + real_cons + z2 + ln_cpi;
        let ln_m1 = 0.5 - 0.3 * ln_oc + 0.05 * spread + real_cons + z3 + ln_cpi;
        cons_nominal.push((real_cons + ln_cpi).exp());
        let _ = writeln!(
            monthly,
            "{},{:.6},{:.6},{:.8},{:.6},{:.4},{:.4},{:.6}",
            month_label(t),
            i,
            is,
            share,
            ln_cpi.exp(),
            ln_m2.exp(),
            ln_m1.exp(),
            ip
        );
    }
    let mut quarterly = String::from("date,CONS\n");
    for q in 0..f.months / 3 {
        // value dated at the quarter's middle month
        let _ = writeln!(quarterly, "{}-Q{},{:.4}", 2000 + q / 4, q % 4 + 1, cons_nominal[3 * q + 1]);
    }
    fs::create_dir_all(dir).unwrap();
    let m = dir.join("monthly.csv");
    let qp = dir.join("quarterly.csv");
    fs::write(&m, monthly).unwrap();
    fs::write(&qp, quarterly).unwrap();
    (m, qp)
}

/// A run configuration over [`write_raw`] output. `money` and `scales`
/// pick the aggregates and scale variables.
pub fn config_text(money: &[&str], scales: &[(&str, bool)]) -> String {
    let money = money.iter().map(|m| format!("\"{m}\"")).collect::<Vec<_>>().join(", ");
    let scale = scales
        .iter()
        .map(|(s, d)| format!("{{ series = \"{s}\", deflate = {d} }}"))
        .collect::<Vec<_>>()
        .join(", ");
    format!(
        r#"[phi]
annual = 0.01

[[country]]
name = "SYN"
inputs = [
    {{ path = "monthly.csv", columns = ["i", "i_star", "fx_share", "cpi", "m2", "m1", "ip"] }},
    {{ path = "quarterly.csv", columns = {{ CONS = "cons" }} }},
]
[country.series]
deposit_ratio = "fx_share"
deposit_kind = "foreign_share"
rate = "i"
rate_star = "i_star"
price = "cpi"
money = [{money}]
scale = [{scale}]
"#
    )
}

/// Raw data plus `config.toml` in `dir`; returns the config path.
pub fn setup(dir: &Path, f: &Fixture, money: &[&str], scales: &[(&str, bool)]) -> PathBuf {
    write_raw(dir, f);
    let cfg = dir.join("config.toml");
    fs::write(&cfg, config_text(money, scales)).unwrap();
    cfg
}

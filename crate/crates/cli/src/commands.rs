//! Subcommand bodies. Each returns what it wrote so callers and tests can
//! inspect it; nothing here prints.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use mdcoint_core::coint::{estimate_eq15, estimate_eq20, Eq15Columns, Eq20Columns};
use mdcoint_core::model::{simulate_triangular, SimSpec};
use mdcoint_core::montecarlo::run_montecarlo;
use mdcoint_core::report::{
    eq15_rows, eq15_table, eq20_rows, eq20_table, unitroot_rows, unitroot_table, write_rows_csv, ReportRow,
    UnitRootRow,
};
use mdcoint_core::timeseries::{
    align, annual_to_monthly_rate, deposit_ratio_from_foreign_share, load_csv, log_series, opportunity_cost,
    spline_to_monthly, spread, write_panel_csv, AlignedPanel, Frequency, TimeSeries,
};
use mdcoint_core::unitroot::{adf, pp};

use crate::config::{CountryConfig, DepositKind, RateUnits, RunConfig};

/// A problem with how the tool was invoked rather than with the data.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Eq15,
    Eq20,
    Both,
}

/// Regression panel of one country.
#[derive(Debug, Clone)]
pub struct CountryPanel {
    pub country: String,
    pub panel: AlignedPanel,
    /// `ln_real_<aggregate>` columns with their aggregate names.
    pub money: Vec<(String, String)>,
    /// Scale columns with their series names.
    pub scale: Vec<(String, String)>,
}

/// Text and CSV renderings of one command's results.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub text: String,
    pub rows: Vec<ReportRow>,
}

impl Report {
    fn append(&mut self, other: Report) {
        if !self.text.is_empty() {
            self.text.push('\n');
        }
        self.text.push_str(&other.text);
        self.rows.extend(other.rows);
    }

    pub fn write(&self, dir: &Path, stem: &str) -> Result<(PathBuf, PathBuf)> {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        let txt = dir.join(format!("{stem}.txt"));
        let csv = dir.join(format!("{stem}.csv"));
        fs::write(&txt, &self.text).with_context(|| format!("cannot write {}", txt.display()))?;
        let file = fs::File::create(&csv).with_context(|| format!("cannot write {}", csv.display()))?;
        write_rows_csv(&self.rows, file)?;
        Ok((txt, csv))
    }

    pub fn csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        write_rows_csv(&self.rows, &mut buf)?;
        Ok(String::from_utf8(buf)?)
    }
}

fn require_countries(cfg: &RunConfig) -> Result<()> {
    if cfg.countries.is_empty() {
        return Err(UsageError("configuration defines no [[country]] blocks".into()).into());
    }
    Ok(())
}

/// Loads, converts and aligns one country's inputs into the regression panel
/// `ln_ratio, ln_oc, ln_oc_star, spread, ln_real_<money>..., <scale>...`.
pub fn build_panel(cfg: &RunConfig, c: &CountryConfig) -> Result<CountryPanel> {
    let ctx = || format!("country {}", c.name);
    let phi = cfg.holding_cost()?;
    let mut loaded: BTreeMap<String, TimeSeries> = BTreeMap::new();
    for input in &c.inputs {
        let path = cfg.resolve(&input.path);
        for s in load_csv(&path, &input.columns.schema()).with_context(ctx)? {
            if loaded.contains_key(s.name()) {
                bail!("{}: series `{}` is loaded twice", ctx(), s.name());
            }
            loaded.insert(s.name().to_string(), s);
        }
    }
    let m = &c.series;
    let mut needed: Vec<&str> = vec![&m.deposit_ratio, &m.rate, &m.rate_star, &m.price];
    needed.extend(m.money.iter().map(String::as_str));
    needed.extend(m.scale.iter().map(|s| s.series.as_str()));
    if m.money.is_empty() || m.scale.is_empty() {
        bail!("{}: at least one money aggregate and one scale variable are required", ctx());
    }
    let mut raw = Vec::new();
    for name in needed {
        if raw.iter().any(|s: &TimeSeries| s.name() == name) {
            continue;
        }
        let s = loaded.get(name).ok_or_else(|| {
            anyhow!(
                "{}: series `{name}` is not among the loaded columns ({})",
                ctx(),
                loaded.keys().cloned().collect::<Vec<_>>().join(", ")
            )
        })?;
        raw.push(match s.frequency() {
            Frequency::Monthly => s.clone(),
            Frequency::Quarterly => {
                log::info!("{}: interpolating quarterly `{name}` to monthly", ctx());
                spline_to_monthly(s).with_context(ctx)?
            }
        });
    }
    let aligned = align(&raw).with_context(ctx)?;
    let get = |n: &str| aligned.series(n).expect("aligned above");

    let to_monthly = |s: TimeSeries| -> Result<TimeSeries> {
        Ok(match m.rate_units {
            RateUnits::AnnualPercent => annual_to_monthly_rate(&s)?,
            RateUnits::MonthlyDecimal => s,
        })
    };
    let oc = opportunity_cost(&to_monthly(get(&m.rate))?, phi).with_context(ctx)?;
    let oc_star = opportunity_cost(&to_monthly(get(&m.rate_star))?, phi).with_context(ctx)?;
    let ratio = match m.deposit_kind {
        DepositKind::Ratio => get(&m.deposit_ratio),
        DepositKind::ForeignShare => deposit_ratio_from_foreign_share(&get(&m.deposit_ratio)).with_context(ctx)?,
    };
    let ln_p = log_series(&get(&m.price)).with_context(ctx)?;

    let mut columns = vec![
        ("ln_ratio".to_string(), log_series(&ratio).with_context(ctx)?.values().to_vec()),
        ("ln_oc".to_string(), log_series(&oc).with_context(ctx)?.values().to_vec()),
        ("ln_oc_star".to_string(), log_series(&oc_star).with_context(ctx)?.values().to_vec()),
        ("spread".to_string(), spread(&oc, &oc_star).with_context(ctx)?.values().to_vec()),
    ];
    let real = |name: &str, deflate: bool| -> Result<Vec<f64>> {
        let ln = log_series(&get(name)).with_context(ctx)?;
        Ok(if deflate {
            ln.values().iter().zip(ln_p.values()).map(|(a, b)| a - b).collect()
        } else {
            ln.values().to_vec()
        })
    };
    let mut money = Vec::new();
    for agg in &m.money {
        let col = format!("ln_real_{agg}");
        columns.push((col.clone(), real(agg, true)?));
        money.push((col, agg.clone()));
    }
    let mut scale = Vec::new();
    for s in &m.scale {
        let col = if s.deflate {
            format!("ln_real_{}", s.series)
        } else {
            format!("ln_{}", s.series)
        };
        columns.push((col.clone(), real(&s.series, s.deflate)?));
        scale.push((col, s.series.clone()));
    }
    let panel = AlignedPanel::new(aligned.start(), columns).with_context(ctx)?;
    Ok(CountryPanel {
        country: c.name.clone(),
        panel,
        money,
        scale,
    })
}

pub fn build_panels(cfg: &RunConfig) -> Result<Vec<CountryPanel>> {
    require_countries(cfg)?;
    cfg.countries.iter().map(|c| build_panel(cfg, c)).collect()
}

/// Writes `panel_<country>.csv` per country.
pub fn cmd_transform(cfg: &RunConfig, out: &Path) -> Result<Vec<PathBuf>> {
    let panels = build_panels(cfg)?;
    fs::create_dir_all(out).with_context(|| format!("cannot create {}", out.display()))?;
    let mut written = Vec::new();
    for p in &panels {
        let path = out.join(format!("panel_{}.csv", p.country));
        let file = fs::File::create(&path).with_context(|| format!("cannot write {}", path.display()))?;
        write_panel_csv(&p.panel, file)?;
        written.push(path);
    }
    Ok(written)
}

pub fn unitroot_report(panels: &[CountryPanel]) -> Result<Report> {
    let mut rows = Vec::new();
    for p in panels {
        for s in p.panel.to_series() {
            let ctx = || format!("country {}, variable {}", p.country, s.name());
            rows.push(UnitRootRow {
                country: p.country.clone(),
                variable: s.name().to_string(),
                adf: adf(&s).with_context(ctx)?,
                pp: pp(&s).with_context(ctx)?,
            });
        }
    }
    Ok(Report {
        text: unitroot_table(&rows),
        rows: unitroot_rows(&rows),
    })
}

pub fn estimate_report(panels: &[CountryPanel], which: Which, max_k: Option<usize>) -> Result<Report> {
    let mut report = Report::default();
    for p in panels {
        let ctx = || format!("country {}", p.country);
        if which != Which::Eq20 {
            let r = estimate_eq15(&p.panel, &Eq15Columns::default(), max_k).with_context(ctx)?;
            report.append(Report {
                text: eq15_table(&p.country, &r),
                rows: eq15_rows(&p.country, &r),
            });
        }
        if which != Which::Eq15 {
            for (money_col, agg) in &p.money {
                for (scale_col, scale) in &p.scale {
                    let cols = Eq20Columns {
                        money: money_col.clone(),
                        ln_oc: "ln_oc".into(),
                        spread: "spread".into(),
                        scale: scale_col.clone(),
                    };
                    let label = format!("{agg}, {scale}");
                    let r = estimate_eq20(&p.panel, &cols, max_k).with_context(|| format!("{}, {label}", ctx()))?;
                    report.append(Report {
                        text: eq20_table(&p.country, &label, &r),
                        rows: eq20_rows(&p.country, &label, &r),
                    });
                }
            }
        }
    }
    Ok(report)
}

pub fn cmd_unitroot(cfg: &RunConfig) -> Result<Report> {
    unitroot_report(&build_panels(cfg)?)
}

pub fn cmd_estimate(cfg: &RunConfig, which: Which, max_k: Option<usize>) -> Result<Report> {
    estimate_report(&build_panels(cfg)?, which, max_k.or(cfg.estimation.max_k))
}

/// Unit-root tables followed by both equations.
pub fn cmd_report(cfg: &RunConfig, max_k: Option<usize>) -> Result<Report> {
    let panels = build_panels(cfg)?;
    let mut r = unitroot_report(&panels)?;
    r.append(estimate_report(&panels, Which::Both, max_k.or(cfg.estimation.max_k))?);
    Ok(r)
}

fn simulation_spec(cfg: &RunConfig, seed: Option<u64>) -> Result<SimSpec> {
    let mut spec = cfg
        .simulation
        .clone()
        .ok_or_else(|| UsageError("configuration has no [simulation] block".into()))?;
    if let Some(s) = seed.or(cfg.seed) {
        spec.seed = s;
    }
    Ok(spec)
}

/// Writes the simulated panel to `simulated.csv`.
pub fn cmd_simulate(cfg: &RunConfig, seed: Option<u64>, out: &Path) -> Result<PathBuf> {
    let spec = simulation_spec(cfg, seed)?;
    let panel = simulate_triangular(&spec)?;
    fs::create_dir_all(out).with_context(|| format!("cannot create {}", out.display()))?;
    let path = out.join("simulated.csv");
    let file = fs::File::create(&path).with_context(|| format!("cannot write {}", path.display()))?;
    write_panel_csv(&panel, file)?;
    Ok(path)
}

/// Writes the Monte Carlo summary to `montecarlo.csv` and returns its text.
pub fn cmd_montecarlo(cfg: &RunConfig, seed: Option<u64>, replications: Option<usize>, out: &Path) -> Result<String> {
    let spec = simulation_spec(cfg, seed)?;
    let mc = cfg.montecarlo.as_ref();
    let reps = replications
        .or(mc.map(|m| m.replications))
        .ok_or_else(|| UsageError("set [montecarlo] replications or pass --replications".into()))?;
    let summary = run_montecarlo(&spec, reps, mc.and_then(|m| m.max_k).or(cfg.estimation.max_k))?;
    let mut buf = Vec::new();
    summary.write_csv(&mut buf)?;
    let text = String::from_utf8(buf)?;
    fs::create_dir_all(out).with_context(|| format!("cannot create {}", out.display()))?;
    let path = out.join("montecarlo.csv");
    fs::write(&path, &text).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(text)
}

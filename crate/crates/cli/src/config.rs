//! The run configuration: one TOML file describing data inputs, the series
//! mapping per country, the holding cost and estimator options.
//!
//! ```toml
//! [phi]
//! annual = 0.01            # or: monthly = 0.00082953
//!
//! [[country]]
//! name = "CZ"
//! inputs = [
//!     { path = "cz_monthly.csv", columns = ["i", "i_star", "share", "cpi", "m2"] },
//!     { path = "cz_quarterly.csv", columns = { CONS_SA = "cons" } },
//! ]
//! [country.series]
//! deposit_ratio = "share"
//! deposit_kind = "foreign_share"
//! rate = "i"
//! rate_star = "i_star"
//! price = "cpi"
//! money = ["m2"]
//! scale = [{ series = "cons" }]
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use mdcoint_core::model::SimSpec;
use mdcoint_core::timeseries::{monthly_phi, CsvSchema, HoldingCost};
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub output_dir: Option<PathBuf>,
    pub seed: Option<u64>,
    pub phi: Option<PhiConfig>,
    #[serde(default)]
    pub estimation: EstimationConfig,
    #[serde(default, rename = "country")]
    pub countries: Vec<CountryConfig>,
    pub simulation: Option<SimSpec>,
    pub montecarlo: Option<MonteCarloConfig>,
    /// Directory relative input paths resolve against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhiConfig {
    pub annual: Option<f64>,
    pub monthly: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EstimationConfig {
    pub max_k: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonteCarloConfig {
    pub replications: usize,
    pub max_k: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountryConfig {
    pub name: String,
    pub inputs: Vec<InputConfig>,
    pub series: SeriesMap,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputConfig {
    pub path: PathBuf,
    pub columns: Columns,
}

/// Either a list of CSV columns kept under their own names, or a table from
/// CSV column to series name.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Columns {
    Same(Vec<String>),
    Renamed(BTreeMap<String, String>),
}

impl Columns {
    pub fn schema(&self) -> CsvSchema {
        match self {
            Columns::Same(v) => CsvSchema::identity(v.iter().cloned()),
            Columns::Renamed(m) => m.iter().fold(CsvSchema::new(), |s, (c, n)| s.column(c, n)),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DepositKind {
    /// Domestic over foreign-currency deposits.
    #[default]
    Ratio,
    /// Foreign-currency share of total deposits.
    ForeignShare,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RateUnits {
    #[default]
    AnnualPercent,
    MonthlyDecimal,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesMap {
    pub deposit_ratio: String,
    #[serde(default)]
    pub deposit_kind: DepositKind,
    pub rate: String,
    pub rate_star: String,
    #[serde(default)]
    pub rate_units: RateUnits,
    pub price: String,
    /// Monetary aggregates, e.g. `["m2", "m1"]`.
    pub money: Vec<String>,
    /// Scale variables, e.g. consumption and industrial production.
    pub scale: Vec<ScaleConfig>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScaleConfig {
    pub series: String,
    /// Divide by the price level (nominal aggregates); leave off for
    /// volume indices.
    #[serde(default = "yes")]
    pub deflate: bool,
}

fn yes() -> bool {
    true
}

impl RunConfig {
    pub fn from_toml_str(s: &str, base_dir: impl Into<PathBuf>) -> Result<Self> {
        let mut cfg: RunConfig = toml::from_str(s).context("invalid configuration")?;
        cfg.base_dir = base_dir.into();
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::from_toml_str(&text, base).with_context(|| format!("in {}", path.display()))
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    /// The holding cost; exactly one of `annual` and `monthly` must be set.
    pub fn holding_cost(&self) -> Result<HoldingCost> {
        let Some(phi) = &self.phi else {
            bail!("[phi] is required: set exactly one of `annual` or `monthly`");
        };
        Ok(match (phi.annual, phi.monthly) {
            (Some(a), None) => monthly_phi(a)?,
            (None, Some(m)) => HoldingCost::from_monthly(m)?,
            (Some(_), Some(_)) => bail!("[phi] sets both `annual` and `monthly`; keep one"),
            (None, None) => bail!("[phi] must set `annual` or `monthly`"),
        })
    }
}

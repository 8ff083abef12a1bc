//! Dated time series, CSV ingestion and the deterministic transforms that turn
//! raw rates and aggregates into regression variables.
//!
//! A [`TimeSeries`] is a contiguous run of monthly or quarterly observations.
//! Values are always finite; gaps and missing cells are rejected at
//! construction rather than interpolated.

mod csv_io;
mod panel;
mod spline;
mod transform;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use csv_io::{load_csv, read_panel_csv, write_panel_csv, CsvSchema};
pub use panel::{align, AlignedPanel};
pub use spline::{spline_to_monthly, NaturalCubicSpline};
pub use transform::{
    annual_to_monthly_rate, deposit_ratio_from_foreign_share, exp_series, log_series,
    monthly_phi, opportunity_cost, spread, HoldingCost,
};

#[derive(Debug, Error)]
pub enum SeriesError {
    #[error("{path}: missing column `{column}`")]
    MissingColumn { path: String, column: String },
    #[error("{path}: row {row}, column `{column}`: cannot parse `{value}`")]
    Parse {
        path: String,
        row: usize,
        column: String,
        value: String,
    },
    #[error("{path}: row {row}: date gap, expected {expected} but found {found}")]
    DateGap {
        path: String,
        row: usize,
        expected: Period,
        found: Period,
    },
    #[error("{path}: row {row}: mixed date frequencies")]
    MixedFrequency { path: String, row: usize },
    #[error("{path}: no data rows")]
    Empty { path: String },
    #[error("series `{series}` at {date}: {reason} (value {value})")]
    Domain {
        series: String,
        date: Period,
        value: f64,
        reason: &'static str,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("series `{series}` contains a non-finite value at position {index}")]
    NonFinite { series: String, index: usize },
    #[error("alignment error: {0}")]
    Alignment(String),
    #[error("insufficient data: need at least {needed} observations, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("duplicate column name `{0}`")]
    DuplicateColumn(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("csv error on {path}: {source}")]
    Csv {
        path: String,
        #[source]
        source: csv::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Frequency {
    Monthly,
    Quarterly,
}

impl Frequency {
    pub fn periods_per_year(self) -> i64 {
        match self {
            Frequency::Monthly => 12,
            Frequency::Quarterly => 4,
        }
    }
}

/// A calendar month or quarter.
///
/// Ordering and arithmetic are only meaningful between periods of the same
/// frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Period {
    freq: Frequency,
    // periods elapsed since January (or Q1) of year 0
    ordinal: i64,
}

impl Period {
    /// Panics if `month` is outside 1..=12.
    pub fn monthly(year: i32, month: u32) -> Self {
        assert!((1..=12).contains(&month), "month out of range: {month}");
        Period {
            freq: Frequency::Monthly,
            ordinal: i64::from(year) * 12 + i64::from(month) - 1,
        }
    }

    /// Panics if `quarter` is outside 1..=4.
    pub fn quarterly(year: i32, quarter: u32) -> Self {
        assert!((1..=4).contains(&quarter), "quarter out of range: {quarter}");
        Period {
            freq: Frequency::Quarterly,
            ordinal: i64::from(year) * 4 + i64::from(quarter) - 1,
        }
    }

    pub fn frequency(self) -> Frequency {
        self.freq
    }

    pub fn year(self) -> i32 {
        self.ordinal.div_euclid(self.freq.periods_per_year()) as i32
    }

    /// Month (1..=12) or quarter (1..=4) within the year.
    pub fn sub_period(self) -> u32 {
        self.ordinal.rem_euclid(self.freq.periods_per_year()) as u32 + 1
    }

    pub fn offset(self, n: i64) -> Self {
        Period {
            freq: self.freq,
            ordinal: self.ordinal + n,
        }
    }

    /// Signed number of periods from `self` to `other`.
    pub fn periods_until(self, other: Period) -> i64 {
        debug_assert_eq!(self.freq, other.freq);
        other.ordinal - self.ordinal
    }

    /// The middle month of a quarter; months map to themselves.
    pub fn middle_month(self) -> Period {
        match self.freq {
            Frequency::Monthly => self,
            Frequency::Quarterly => Period {
                freq: Frequency::Monthly,
                ordinal: self.ordinal * 3 + 1,
            },
        }
    }
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.freq {
            Frequency::Monthly => write!(f, "{:04}-{:02}", self.year(), self.sub_period()),
            Frequency::Quarterly => write!(f, "{:04}-Q{}", self.year(), self.sub_period()),
        }
    }
}

impl FromStr for Period {
    type Err = String;

    /// Accepts `YYYY-MM` and `YYYY-Qn`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (year, rest) = s
            .split_once('-')
            .ok_or_else(|| format!("expected YYYY-MM or YYYY-Qn, got `{s}`"))?;
        let year: i32 = year
            .parse()
            .map_err(|_| format!("bad year in `{s}`"))?;
        if let Some(q) = rest.strip_prefix(['Q', 'q']) {
            match q.parse::<u32>() {
                Ok(q @ 1..=4) => Ok(Period::quarterly(year, q)),
                _ => Err(format!("bad quarter in `{s}`")),
            }
        } else {
            match rest.parse::<u32>() {
                Ok(m @ 1..=12) if rest.len() == 2 => Ok(Period::monthly(year, m)),
                _ => Err(format!("bad month in `{s}`")),
            }
        }
    }
}

/// A named, contiguous, gap-free series of finite observations.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    name: String,
    start: Period,
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(
        name: impl Into<String>,
        start: Period,
        values: Vec<f64>,
    ) -> Result<Self, SeriesError> {
        let name = name.into();
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(SeriesError::NonFinite {
                series: name,
                index,
            });
        }
        Ok(TimeSeries {
            name,
            start,
            values,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn start(&self) -> Period {
        self.start
    }

    /// Last observed period. For an empty series this is the period before `start`.
    pub fn end(&self) -> Period {
        self.start.offset(self.values.len() as i64 - 1)
    }

    pub fn frequency(&self) -> Frequency {
        self.start.frequency()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn date(&self, i: usize) -> Period {
        self.start.offset(i as i64)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Builds a new series with the same index, checking finiteness of the result.
    pub(crate) fn with_values(&self, name: impl Into<String>, values: Vec<f64>) -> Result<Self, SeriesError> {
        debug_assert_eq!(values.len(), self.values.len());
        TimeSeries::new(name, self.start, values)
    }

}

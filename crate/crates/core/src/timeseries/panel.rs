use std::collections::HashSet;

use super::{Frequency, Period, SeriesError, TimeSeries};

/// Named monthly columns sharing one contiguous date index.
#[derive(Debug, Clone, PartialEq)]
pub struct AlignedPanel {
    start: Period,
    len: usize,
    names: Vec<String>,
    columns: Vec<Vec<f64>>,
}

impl AlignedPanel {
    pub fn new(start: Period, columns: Vec<(String, Vec<f64>)>) -> Result<Self, SeriesError> {
        if start.frequency() != Frequency::Monthly {
            return Err(SeriesError::Alignment("panel index must be monthly".into()));
        }
        let len = columns.first().map_or(0, |(_, v)| v.len());
        let mut seen = HashSet::new();
        let mut names = Vec::with_capacity(columns.len());
        let mut data = Vec::with_capacity(columns.len());
        for (name, values) in columns {
            if !seen.insert(name.clone()) {
                return Err(SeriesError::DuplicateColumn(name));
            }
            if values.len() != len {
                return Err(SeriesError::Alignment(format!(
                    "column `{name}` has {} rows, expected {len}",
                    values.len()
                )));
            }
            if let Some(index) = values.iter().position(|v| !v.is_finite()) {
                return Err(SeriesError::NonFinite {
                    series: name,
                    index,
                });
            }
            names.push(name);
            data.push(values);
        }
        Ok(AlignedPanel {
            start,
            len,
            names,
            columns: data,
        })
    }

    pub fn start(&self) -> Period {
        self.start
    }

    pub fn end(&self) -> Period {
        self.start.offset(self.len as i64 - 1)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.columns[i].as_slice())
    }

    pub fn require(&self, name: &str) -> Result<&[f64], SeriesError> {
        self.column(name).ok_or_else(|| {
            SeriesError::Alignment(format!(
                "panel has no column `{name}` (columns: {})",
                self.names.join(", ")
            ))
        })
    }

    pub fn date(&self, i: usize) -> Period {
        self.start.offset(i as i64)
    }

    pub fn series(&self, name: &str) -> Option<TimeSeries> {
        self.column(name)
            .map(|v| TimeSeries::new(name, self.start, v.to_vec()).expect("panel values are finite"))
    }

    pub fn to_series(&self) -> Vec<TimeSeries> {
        self.names.iter().filter_map(|n| self.series(n)).collect()
    }
}

/// Restricts monthly series to their common date range, preserving order.
pub fn align(series: &[TimeSeries]) -> Result<AlignedPanel, SeriesError> {
    let first = series
        .first()
        .ok_or_else(|| SeriesError::Alignment("no series to align".into()))?;
    if let Some(s) = series.iter().find(|s| s.frequency() != Frequency::Monthly) {
        return Err(SeriesError::Alignment(format!(
            "`{}` is not monthly; interpolate it first",
            s.name()
        )));
    }
    if let Some(s) = series.iter().find(|s| s.is_empty()) {
        return Err(SeriesError::Alignment(format!("`{}` is empty", s.name())));
    }
    let start = series.iter().map(|s| s.start()).max().unwrap_or(first.start());
    let end = series.iter().map(|s| s.end()).min().unwrap_or(first.end());
    if end < start {
        return Err(SeriesError::Alignment(format!(
            "no common date range (latest start {start}, earliest end {end})"
        )));
    }
    let len = start.periods_until(end) as usize + 1;
    let columns = series
        .iter()
        .map(|s| {
            let off = s.start().periods_until(start) as usize;
            (s.name().to_string(), s.values()[off..off + len].to_vec())
        })
        .collect();
    AlignedPanel::new(start, columns)
}

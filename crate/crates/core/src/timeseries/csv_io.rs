use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use super::{AlignedPanel, Frequency, Period, SeriesError, TimeSeries};

/// Which CSV columns to read and what to call the resulting series.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CsvSchema {
    pub columns: Vec<(String, String)>,
}

impl CsvSchema {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn column(mut self, csv_column: impl Into<String>, series: impl Into<String>) -> Self {
        self.columns.push((csv_column.into(), series.into()));
        self
    }

    /// Maps every column to a series of the same name.
    pub fn identity<I, S>(columns: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        CsvSchema {
            columns: columns
                .into_iter()
                .map(|c| {
                    let c = c.into();
                    (c.clone(), c)
                })
                .collect(),
        }
    }
}

/// Reads one series per schema entry from a CSV file whose first column is a
/// `YYYY-MM` or `YYYY-Qn` date.
pub fn load_csv(path: impl AsRef<Path>, schema: &CsvSchema) -> Result<Vec<TimeSeries>, SeriesError> {
    let path = path.as_ref();
    let label = path.display().to_string();
    let file = File::open(path).map_err(|source| SeriesError::Io {
        path: label.clone(),
        source,
    })?;
    parse_csv(file, &label, schema)
}

fn parse_csv<R: Read>(reader: R, label: &str, schema: &CsvSchema) -> Result<Vec<TimeSeries>, SeriesError> {
    let csv_err = |source| SeriesError::Csv {
        path: label.to_string(),
        source,
    };
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers().map_err(csv_err)?.clone();
    let mut indices = Vec::with_capacity(schema.columns.len());
    for (col, _) in &schema.columns {
        // the first column is the date
        let idx = headers
            .iter()
            .skip(1)
            .position(|h| h == col)
            .map(|i| i + 1)
            .ok_or_else(|| SeriesError::MissingColumn {
                path: label.to_string(),
                column: col.clone(),
            })?;
        indices.push(idx);
    }
    let date_header = headers.get(0).unwrap_or("date").to_string();

    let mut start: Option<Period> = None;
    let mut expected: Option<Period> = None;
    let mut data: Vec<Vec<f64>> = vec![Vec::new(); indices.len()];
    for (i, record) in rdr.records().enumerate() {
        let row = i + 2;
        let record = record.map_err(csv_err)?;
        let raw_date = record.get(0).unwrap_or("");
        let date: Period = raw_date.parse().map_err(|_| SeriesError::Parse {
            path: label.to_string(),
            row,
            column: date_header.clone(),
            value: raw_date.to_string(),
        })?;
        match expected {
            None => start = Some(date),
            Some(exp) if exp.frequency() != date.frequency() => {
                return Err(SeriesError::MixedFrequency {
                    path: label.to_string(),
                    row,
                })
            }
            Some(exp) if exp != date => {
                return Err(SeriesError::DateGap {
                    path: label.to_string(),
                    row,
                    expected: exp,
                    found: date,
                })
            }
            Some(_) => {}
        }
        expected = Some(date.offset(1));
        for ((col, _), (&idx, out)) in schema.columns.iter().zip(indices.iter().zip(data.iter_mut())) {
            let cell = record.get(idx).unwrap_or("");
            let value: f64 = cell
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| SeriesError::Parse {
                    path: label.to_string(),
                    row,
                    column: col.clone(),
                    value: cell.to_string(),
                })?;
            out.push(value);
        }
    }
    let start = start.ok_or_else(|| SeriesError::Empty {
        path: label.to_string(),
    })?;
    schema
        .columns
        .iter()
        .zip(data)
        .map(|((_, name), values)| TimeSeries::new(name.clone(), start, values))
        .collect()
}

/// Reads a monthly panel written by [`write_panel_csv`] (or any CSV with a
/// monthly date column followed by numeric columns).
pub fn read_panel_csv(path: impl AsRef<Path>) -> Result<AlignedPanel, SeriesError> {
    let path = path.as_ref();
    let label = path.display().to_string();
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|source| SeriesError::Csv {
            path: label.clone(),
            source,
        })?;
    let headers: Vec<String> = rdr
        .headers()
        .map_err(|source| SeriesError::Csv {
            path: label.clone(),
            source,
        })?
        .iter()
        .skip(1)
        .map(str::to_string)
        .collect();
    drop(rdr);
    let series = load_csv(path, &CsvSchema::identity(headers))?;
    if let Some(s) = series.iter().find(|s| s.frequency() != Frequency::Monthly) {
        return Err(SeriesError::Alignment(format!(
            "{label}: panel `{}` is not monthly",
            s.name()
        )));
    }
    super::align(&series)
}

/// Writes a panel as CSV: a `date` column then one column per series.
///
/// Values are written with Rust's shortest round-trip float formatting.
pub fn write_panel_csv<W: Write>(panel: &AlignedPanel, writer: W) -> Result<(), SeriesError> {
    let label = "<panel output>";
    let csv_err = |source| SeriesError::Csv {
        path: label.to_string(),
        source,
    };
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["date".to_string()];
    header.extend(panel.names().iter().cloned());
    w.write_record(&header).map_err(csv_err)?;
    let cols: Vec<&[f64]> = panel
        .names()
        .iter()
        .map(|n| panel.column(n).expect("name from panel"))
        .collect();
    for t in 0..panel.len() {
        let mut row = Vec::with_capacity(cols.len() + 1);
        row.push(panel.date(t).to_string());
        row.extend(cols.iter().map(|c| format!("{}", c[t])));
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush().map_err(|source| SeriesError::Io {
        path: label.to_string(),
        source,
    })
}

//! Extreme-log input and tidy study output.

use std::collections::HashSet;
use std::io::{Read, Write};

use extremefim::extremes::{ExtremeDataset, Interval};
use extremefim::fim::Variant;
use extremefim::montecarlo::StudyReport;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremeLogRow {
    pub interval_id: i64,
    pub y_min: f64,
    pub y_max: f64,
}

fn input_error(line: Option<u64>, message: impl std::fmt::Display) -> CliError {
    match line {
        Some(l) => CliError::Input(format!("line {l}: {message}")),
        None => CliError::Input(message.to_string()),
    }
}

/// Reads `interval_id,y_min,y_max` rows. Line numbers in errors count the header as line 1.
pub fn read_extreme_log<R: Read>(reader: R) -> Result<Vec<ExtremeLogRow>, CliError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers().map_err(|e| input_error(Some(1), e))?.clone();
    let expected = ["interval_id", "y_min", "y_max"];
    if headers.iter().ne(expected) {
        return Err(input_error(
            Some(1),
            format!(
                "expected header 'interval_id,y_min,y_max', found '{}'",
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        ));
    }

    let mut rows = Vec::new();
    let mut seen = HashSet::new();
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line());
            input_error(line, e)
        })?;
        let line = record.position().map(|p| p.line());
        let row: ExtremeLogRow = record.deserialize(Some(&headers)).map_err(|e| input_error(line, e))?;
        if !(row.y_min.is_finite() && row.y_max.is_finite()) {
            return Err(input_error(line, "non-finite value"));
        }
        if row.y_min > row.y_max {
            return Err(input_error(line, format!("y_min {} exceeds y_max {}", row.y_min, row.y_max)));
        }
        if !seen.insert(row.interval_id) {
            return Err(input_error(line, format!("duplicate interval_id {}", row.interval_id)));
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(input_error(None, "no data rows"));
    }
    Ok(rows)
}

pub fn to_dataset(k: usize, rows: &[ExtremeLogRow]) -> Result<ExtremeDataset, CliError> {
    let intervals = rows.iter().map(|r| Interval { y_min: r.y_min, y_max: r.y_max }).collect();
    Ok(ExtremeDataset::new(k, intervals)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Empirical,
    CrlbClosed,
    CrlbPlugin,
    CrlbQuadrature,
}

/// One value of a study in long format: empirical variance or a variance bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TidyRow {
    #[serde(rename = "K")]
    pub k: usize,
    pub variant: Variant,
    pub source: Source,
    pub value: f64,
}

pub fn tidy_rows(report: &StudyReport) -> Vec<TidyRow> {
    let mut out = Vec::new();
    for row in &report.rows {
        let mut push = |source, value: Option<f64>| {
            if let Some(value) = value {
                out.push(TidyRow { k: row.k, variant: row.variant, source, value });
            }
        };
        push(Source::Empirical, Some(row.var_theta_hat));
        push(Source::CrlbClosed, row.crlb.closed_form);
        push(Source::CrlbPlugin, row.crlb.plug_in);
        push(Source::CrlbQuadrature, row.crlb.quadrature);
    }
    out
}

pub fn write_tidy<W: Write>(writer: W, rows: &[TidyRow]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_tidy<R: Read>(reader: R) -> csv::Result<Vec<TidyRow>> {
    csv::Reader::from_reader(reader).deserialize().collect()
}

//! CSV emission and parsing of sweep records.

use std::io::{Read, Write};

use crate::assembly::Formulation;
use crate::error::{Result, WbmError};

use super::ExperimentRecord;

pub const CSV_HEADER: [&str; 10] = [
    "experiment",
    "formulation",
    "T",
    "N",
    "M",
    "error",
    "cond",
    "coef_norm",
    "residual_norm",
    "wall_ms",
];

/// Shortest round-trip decimal; infinities as `inf`.
fn float(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:?}")
    }
}

fn parse_float(s: &str) -> Result<f64> {
    s.parse::<f64>()
        .map_err(|_| WbmError::InvalidInput(format!("'{s}' is not a number")))
}

fn parse_count(s: &str) -> Result<usize> {
    s.parse::<usize>()
        .map_err(|_| WbmError::InvalidInput(format!("'{s}' is not a count")))
}

pub fn write_csv<W: Write>(writer: W, records: &[ExperimentRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.experiment.clone(),
            r.formulation.name().to_string(),
            float(r.t),
            r.n.to_string(),
            r.m.to_string(),
            float(r.error),
            float(r.cond),
            float(r.coef_norm),
            float(r.residual_norm),
            float(r.wall_ms),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Parses a CSV written by [`write_csv`], checking the header.
pub fn read_csv<R: Read>(reader: R) -> Result<Vec<ExperimentRecord>> {
    let mut rd = csv::Reader::from_reader(reader);
    let header = rd.headers()?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(WbmError::InvalidInput(format!(
            "unexpected CSV header: {}",
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    rd.records()
        .map(|row| {
            let row = row?;
            Ok(ExperimentRecord {
                experiment: row[0].to_string(),
                formulation: row[1].parse::<Formulation>()?,
                t: parse_float(&row[2])?,
                n: parse_count(&row[3])?,
                m: parse_count(&row[4])?,
                error: parse_float(&row[5])?,
                cond: parse_float(&row[6])?,
                coef_norm: parse_float(&row[7])?,
                residual_norm: parse_float(&row[8])?,
                wall_ms: parse_float(&row[9])?,
            })
        })
        .collect()
}

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::TableOrder;
use crate::error::Result;
use crate::report::{DeviationRow, Session};

/// One state of a spectrum file. Missing values mark failed rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRecord {
    pub state_label: String,
    pub e_leading: Option<f64>,
    pub e_second: Option<f64>,
    pub e_numerical: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumFormat {
    Csv,
    Json,
}

impl SpectrumFormat {
    /// JSON for a `.json` extension, delimited text otherwise.
    pub fn for_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => SpectrumFormat::Json,
            _ => SpectrumFormat::Csv,
        }
    }
}

fn records(leading: &[DeviationRow], second: &[DeviationRow]) -> Vec<SpectrumRecord> {
    leading
        .iter()
        .zip(second)
        .map(|(l, s)| {
            let (el, nl) = l
                .energies()
                .map_or((None, None), |(e, n, _)| (Some(e), Some(n)));
            let (es, ns) = s
                .energies()
                .map_or((None, None), |(e, n, _)| (Some(e), Some(n)));
            SpectrumRecord {
                state_label: l.state.to_string(),
                e_leading: el,
                e_second: es,
                e_numerical: nl.or(ns),
            }
        })
        .collect()
}

pub fn write_spectrum(path: &Path, rows: &[SpectrumRecord]) -> Result<()> {
    match SpectrumFormat::for_path(path) {
        SpectrumFormat::Json => std::fs::write(path, serde_json::to_string_pretty(rows)? + "\n")?,
        SpectrumFormat::Csv => {
            let mut w = csv::Writer::from_path(path)?;
            if rows.is_empty() {
                w.write_record(["state_label", "e_leading", "e_second", "e_numerical"])?;
            }
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn read_spectrum(path: &Path) -> Result<Vec<SpectrumRecord>> {
    Ok(match SpectrumFormat::for_path(path) {
        SpectrumFormat::Json => serde_json::from_str(&std::fs::read_to_string(path)?)?,
        SpectrumFormat::Csv => csv::Reader::from_path(path)?
            .deserialize()
            .collect::<std::result::Result<_, _>>()?,
    })
}

/// Writes leading, second-order and numerical energies of the manifest's
/// states at `lambda` to `path`.
pub fn emit_spectrum(
    session: &mut Session,
    lambda: f64,
    path: &Path,
) -> Result<Vec<SpectrumRecord>> {
    let leading = session.run_table(lambda, TableOrder::Leading);
    let second = session.run_table(lambda, TableOrder::Second);
    let rows = records(&leading, &second);
    write_spectrum(path, &rows)?;
    Ok(rows)
}

use apt_core::QuasiParticleState;
use serde::Deserialize;

use crate::config::TableOrder;
use crate::error::{CliError, Result};

const EMBEDDED: &str = include_str!("../data/published_tables.csv");

/// One printed row of a published table.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct GoldenRow {
    pub table: u32,
    pub lambda: f64,
    pub order: TableOrder,
    pub n1: u32,
    pub n2: u32,
    pub energy: f64,
    pub numerical: f64,
    pub deviation_percent: f64,
}

impl GoldenRow {
    pub fn state(&self) -> QuasiParticleState {
        QuasiParticleState::new(self.n1, self.n2)
    }
}

/// The printed values of Tables 1–10.
#[derive(Debug, Clone, PartialEq)]
pub struct GoldenTables {
    pub rows: Vec<GoldenRow>,
}

impl GoldenTables {
    pub fn embedded() -> Self {
        Self::parse(EMBEDDED).expect("embedded tables are well formed")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let rows = csv::Reader::from_reader(text.as_bytes())
            .deserialize()
            .collect::<std::result::Result<Vec<GoldenRow>, _>>()?;
        if rows.is_empty() {
            return Err(CliError::Golden("no rows".into()));
        }
        Ok(Self { rows })
    }

    pub fn lambdas(&self) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.lambda) {
                out.push(r.lambda);
            }
        }
        out
    }

    pub fn table(&self, lambda: f64, order: TableOrder) -> Vec<&GoldenRow> {
        self.rows
            .iter()
            .filter(|r| r.lambda == lambda && r.order == order)
            .collect()
    }
}

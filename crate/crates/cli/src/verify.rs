use std::fmt::Write as _;

use apt_core::{Order, QuasiParticleState};
use serde::Serialize;

use crate::config::{TableOrder, Tolerances};
use crate::golden::GoldenTables;
use crate::report::{deviation_percent, RowOutcome, Session};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Column {
    Energy,
    Numerical,
    Deviation,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tolerance {
    Absolute(f64),
    Relative(f64),
    PercentagePoints(f64),
}

impl Tolerance {
    fn accepts(self, expected: f64, actual: f64) -> bool {
        let d = (actual - expected).abs();
        match self {
            Tolerance::Absolute(t) | Tolerance::PercentagePoints(t) => d <= t,
            Tolerance::Relative(t) => d <= t * expected.abs(),
        }
    }

    fn describe(self) -> String {
        match self {
            Tolerance::Absolute(t) => format!("abs {t:e}"),
            Tolerance::Relative(t) => format!("rel {t:e}"),
            Tolerance::PercentagePoints(t) => format!("pp {t:e}"),
        }
    }
}

/// Comparison of one printed table cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellCheck {
    pub table: u32,
    pub lambda: f64,
    pub state: QuasiParticleState,
    pub column: Column,
    pub expected: f64,
    pub actual: Option<f64>,
    pub tolerance: Tolerance,
    pub passed: bool,
    /// Set when the computed row failed.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub cells: Vec<CellCheck>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &CellCheck> {
        self.cells.iter().filter(|c| !c.passed)
    }

    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn tables(&self) -> Vec<u32> {
        let mut t: Vec<u32> = self.cells.iter().map(|c| c.table).collect();
        t.dedup();
        t
    }

    /// One line per cell in table order, then a summary line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.cells {
            let actual = c
                .actual
                .map_or_else(|| "-".to_string(), |a| format!("{a:.8}"));
            let _ = writeln!(
                out,
                "{} table {:>2} lambda {:<4} {} {:<9} expected {:<12} actual {:<14} {}{}",
                if c.passed { "PASS" } else { "FAIL" },
                c.table,
                c.lambda,
                c.state,
                format!("{:?}", c.column).to_lowercase(),
                c.expected,
                actual,
                c.tolerance.describe(),
                c.error
                    .as_ref()
                    .map_or_else(String::new, |e| format!(" ({e})")),
            );
        }
        let failed = self.failures().count();
        let _ = writeln!(
            out,
            "{} of {} cells passed",
            self.cells.len() - failed,
            self.cells.len()
        );
        out
    }
}

/// Regenerates the golden tables whose coupling is in `lambdas` (all when
/// `None`) and compares every printed cell.
pub fn verify_tables(
    session: &mut Session,
    golden: &GoldenTables,
    lambdas: Option<&[f64]>,
    tolerances: &Tolerances,
) -> VerifyReport {
    let selected: Vec<f64> = golden
        .lambdas()
        .into_iter()
        .filter(|l| lambdas.is_none_or(|s| s.contains(l)))
        .collect();
    session.prefetch(&selected);
    let mut cells = Vec::new();
    for &lambda in &selected {
        for order in [TableOrder::Leading, TableOrder::Second] {
            let rows = session.run_table(lambda, order);
            for g in golden.table(lambda, order) {
                let computed = rows.iter().find(|r| r.state == g.state());
                let (values, error) = match computed.map(|r| &r.outcome) {
                    Some(RowOutcome::Computed {
                        perturbative_energy,
                        numerical_energy,
                        order,
                        ..
                    }) => (
                        Some((*perturbative_energy, *numerical_energy, *order)),
                        None,
                    ),
                    Some(RowOutcome::Failed { error }) => (None, Some(error.clone())),
                    None => (None, Some(format!("state {} not computed", g.state()))),
                };
                let energy_tol = match (order, values.map(|v| v.2)) {
                    (TableOrder::Leading, _) => Tolerance::Absolute(tolerances.leading_abs),
                    (TableOrder::Second, Some(Order::SecondOrderDegenerate)) => {
                        Tolerance::Relative(tolerances.degenerate_rel)
                    }
                    (TableOrder::Second, _) => Tolerance::Relative(tolerances.second_rel),
                };
                let checks = [
                    (Column::Energy, g.energy, values.map(|v| v.0), energy_tol),
                    (
                        Column::Numerical,
                        g.numerical,
                        values.map(|v| v.1),
                        Tolerance::Relative(tolerances.numerical_rel),
                    ),
                    (
                        Column::Deviation,
                        g.deviation_percent,
                        values.map(|v| deviation_percent(v.0, v.1)),
                        Tolerance::PercentagePoints(tolerances.deviation_pp),
                    ),
                ];
                for (column, expected, actual, tolerance) in checks {
                    cells.push(CellCheck {
                        table: g.table,
                        lambda,
                        state: g.state(),
                        column,
                        expected,
                        actual,
                        tolerance,
                        passed: actual.is_some_and(|a| tolerance.accepts(expected, a)),
                        error: error.clone(),
                    });
                }
            }
        }
    }
    cells.sort_by_key(|c| c.table);
    VerifyReport { cells }
}

//! Sweeps, table regeneration and verification on top of `apt-core`.

pub mod config;
pub mod error;
pub mod golden;
pub mod report;
pub mod spectrum;
pub mod verify;

pub use config::{
    ReferenceSource, RunManifest, TableOrder, Tolerances, TABLE_LAMBDAS, TABLE_STATES,
};
pub use error::{CliError, Result};
pub use golden::{GoldenRow, GoldenTables};
pub use report::{
    compute_reference, deviation_percent, run_table, DeviationRow, ReferenceSpectrum, RowOutcome,
    Session,
};
pub use spectrum::{emit_spectrum, read_spectrum, write_spectrum, SpectrumRecord};
pub use verify::{verify_tables, CellCheck, Column, Tolerance, VerifyReport};

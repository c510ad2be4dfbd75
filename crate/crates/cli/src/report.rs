use std::collections::BTreeMap;

use apt_core::adaptive::{estimate, PerturbativeOrder};
use apt_core::fock::label_fock_levels;
use apt_core::lattice::{build_lattice_hamiltonian, label_levels, solve_lowest};
use apt_core::{LabeledLevel, Order, OscillatorConfig, QuasiParticleState};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{ReferenceSource, RunManifest, TableOrder};

/// `100 |E − E_num| / E_num`.
pub fn deviation_percent(perturbative: f64, numerical: f64) -> f64 {
    100.0 * (perturbative - numerical).abs() / numerical
}

/// A row of a regenerated table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeviationRow {
    pub state: QuasiParticleState,
    #[serde(flatten)]
    pub outcome: RowOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowOutcome {
    Computed {
        perturbative_energy: f64,
        numerical_energy: f64,
        deviation_percent: f64,
        order: Order,
        reference_index: usize,
    },
    Failed {
        error: String,
    },
}

impl DeviationRow {
    pub fn failed(state: QuasiParticleState, error: impl ToString) -> Self {
        Self {
            state,
            outcome: RowOutcome::Failed {
                error: error.to_string(),
            },
        }
    }

    pub fn energies(&self) -> Option<(f64, f64, f64)> {
        match self.outcome {
            RowOutcome::Computed {
                perturbative_energy,
                numerical_energy,
                deviation_percent,
                ..
            } => Some((perturbative_energy, numerical_energy, deviation_percent)),
            RowOutcome::Failed { .. } => None,
        }
    }
}

/// Labeled reference levels for one coupling.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceSpectrum {
    pub lambda: f64,
    pub source: ReferenceSource,
    /// The lowest levels, ascending.
    pub spectrum: Vec<f64>,
    pub labels: BTreeMap<QuasiParticleState, Result<LabeledLevel, String>>,
}

impl ReferenceSpectrum {
    pub fn level(&self, state: QuasiParticleState) -> Result<LabeledLevel, String> {
        self.labels
            .get(&state)
            .cloned()
            .unwrap_or_else(|| Err(format!("no reference label for {state}")))
    }
}

fn label_each<F>(
    states: &[QuasiParticleState],
    label: F,
) -> BTreeMap<QuasiParticleState, Result<LabeledLevel, String>>
where
    F: Fn(&[QuasiParticleState]) -> apt_core::Result<Vec<LabeledLevel>>,
{
    match label(states) {
        Ok(levels) => levels.into_iter().map(|l| (l.state, Ok(l))).collect(),
        // some state failed; label one at a time to find out which
        Err(_) => states
            .iter()
            .map(|&s| {
                (
                    s,
                    label(&[s])
                        .map(|mut v| v.remove(0))
                        .map_err(|e| e.to_string()),
                )
            })
            .collect(),
    }
}

/// Solves the reference problem for `lambda` and labels `manifest.states`.
pub fn compute_reference(lambda: f64, manifest: &RunManifest) -> Result<ReferenceSpectrum, String> {
    let cfg = OscillatorConfig::new(lambda).map_err(|e| e.to_string())?;
    let states = &manifest.states;
    match manifest.reference {
        ReferenceSource::Lattice => {
            let h = build_lattice_hamiltonian(cfg, manifest.grid);
            let pairs = solve_lowest(&h, manifest.levels, &manifest.solver_options())
                .map_err(|e| e.to_string())?;
            let labels = label_each(states, |s| {
                label_levels(&pairs, manifest.grid, cfg, s, manifest.label_rule)
            });
            Ok(ReferenceSpectrum {
                lambda,
                source: manifest.reference,
                spectrum: pairs.iter().map(|p| p.value).collect(),
                labels,
            })
        }
        ReferenceSource::Fock => {
            let labels = label_each(states, |s| {
                label_fock_levels(
                    cfg,
                    manifest.cutoff,
                    manifest.levels,
                    s,
                    manifest.label_rule,
                )
            });
            let mut spectrum: Vec<f64> = labels
                .values()
                .filter_map(|l| l.as_ref().ok().map(|l| l.energy))
                .collect();
            spectrum.sort_by(f64::total_cmp);
            spectrum.dedup();
            Ok(ReferenceSpectrum {
                lambda,
                source: manifest.reference,
                spectrum,
                labels,
            })
        }
    }
}

/// Caches reference spectra across tables of the same run.
pub struct Session {
    manifest: RunManifest,
    references: BTreeMap<u64, Result<ReferenceSpectrum, String>>,
}

impl Session {
    pub fn new(manifest: RunManifest) -> Self {
        Self {
            manifest,
            references: BTreeMap::new(),
        }
    }

    pub fn manifest(&self) -> &RunManifest {
        &self.manifest
    }

    /// Supplies a precomputed reference, e.g. one shared between runs.
    pub fn insert_reference(&mut self, lambda: f64, reference: Result<ReferenceSpectrum, String>) {
        self.references.insert(lambda.to_bits(), reference);
    }

    /// Computes all missing references, in parallel across couplings.
    pub fn prefetch(&mut self, lambdas: &[f64]) {
        let missing: Vec<f64> = lambdas
            .iter()
            .copied()
            .filter(|l| !self.references.contains_key(&l.to_bits()))
            .collect();
        let manifest = &self.manifest;
        let solved: Vec<_> = missing
            .par_iter()
            .map(|&l| (l, compute_reference(l, manifest)))
            .collect();
        for (l, r) in solved {
            self.references.insert(l.to_bits(), r);
        }
    }

    pub fn reference(&mut self, lambda: f64) -> &Result<ReferenceSpectrum, String> {
        self.prefetch(&[lambda]);
        &self.references[&lambda.to_bits()]
    }

    /// One row per state of the manifest, in manifest order.
    pub fn run_table(&mut self, lambda: f64, order: TableOrder) -> Vec<DeviationRow> {
        let states = self.manifest.states.clone();
        let opts = self.manifest.estimate_options();
        let reference = self.reference(lambda).clone();
        let perturbative_order = match order {
            TableOrder::Leading => PerturbativeOrder::Leading,
            TableOrder::Second => PerturbativeOrder::Second,
        };
        let cfg = match OscillatorConfig::new(lambda) {
            Ok(c) => c,
            Err(e) => {
                return states
                    .iter()
                    .map(|&s| DeviationRow::failed(s, &e))
                    .collect()
            }
        };
        states
            .par_iter()
            .map(|&state| {
                let reference = match &reference {
                    Ok(r) => r,
                    Err(e) => return DeviationRow::failed(state, e),
                };
                let level = match reference.level(state) {
                    Ok(l) => l,
                    Err(e) => return DeviationRow::failed(state, e),
                };
                match estimate(state, perturbative_order, cfg, &opts) {
                    Ok(e) => DeviationRow {
                        state,
                        outcome: RowOutcome::Computed {
                            perturbative_energy: e.value,
                            numerical_energy: level.energy,
                            deviation_percent: deviation_percent(e.value, level.energy),
                            order: e.order,
                            reference_index: level.index,
                        },
                    },
                    Err(e) => DeviationRow::failed(state, e),
                }
            })
            .collect()
    }
}

/// A single table computed from scratch.
pub fn run_table(lambda: f64, order: TableOrder, manifest: &RunManifest) -> Vec<DeviationRow> {
    Session::new(manifest.clone()).run_table(lambda, order)
}

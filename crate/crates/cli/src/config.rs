use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use apt_core::adaptive::{DegenerateHandling, DegenerateVariant, EstimateOptions};
use apt_core::lattice::{GridConfig, SolverOptions};
use apt_core::{LabelRule, OscillatorConfig, QuasiParticleState};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// The eight states of every published table, in table order.
pub const TABLE_STATES: [QuasiParticleState; 8] = [
    QuasiParticleState::new(0, 0),
    QuasiParticleState::new(0, 1),
    QuasiParticleState::new(0, 2),
    QuasiParticleState::new(0, 3),
    QuasiParticleState::new(1, 1),
    QuasiParticleState::new(1, 2),
    QuasiParticleState::new(1, 3),
    QuasiParticleState::new(2, 2),
];

pub const TABLE_LAMBDAS: [f64; 5] = [0.5, 1.0, 2.0, 8.0, 16.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableOrder {
    Leading,
    Second,
}

impl std::fmt::Display for TableOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TableOrder::Leading => "leading",
            TableOrder::Second => "second",
        })
    }
}

/// Which exact method supplies the numerical column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReferenceSource {
    #[default]
    Lattice,
    Fock,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegenerateChoice {
    #[default]
    Split,
    SplitPlusResidual,
}

impl From<DegenerateChoice> for DegenerateVariant {
    fn from(c: DegenerateChoice) -> Self {
        match c {
            DegenerateChoice::Split => DegenerateVariant::SplitOnly,
            DegenerateChoice::SplitPlusResidual => DegenerateVariant::SplitPlusResidual,
        }
    }
}

/// Acceptance tolerances used by `verify`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Absolute, leading-order energies.
    pub leading_abs: f64,
    /// Relative, numerical column.
    pub numerical_rel: f64,
    /// Relative, nondegenerate second-order energies.
    pub second_rel: f64,
    /// Relative, degenerate-pair second-order energies.
    pub degenerate_rel: f64,
    /// Percentage points, deviation column.
    pub deviation_pp: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            leading_abs: 5e-5,
            numerical_rel: 5e-4,
            second_rel: 1e-4,
            degenerate_rel: 1e-3,
            deviation_pp: 1e-3,
        }
    }
}

impl Tolerances {
    fn validate(&self) -> Result<()> {
        let all = [
            self.leading_abs,
            self.numerical_rel,
            self.second_rel,
            self.degenerate_rel,
            self.deviation_pp,
        ];
        if all.iter().all(|t| t.is_finite() && *t > 0.0) {
            Ok(())
        } else {
            Err(CliError::Manifest("tolerances must be positive".into()))
        }
    }
}

/// Everything that determines the numbers a run produces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub lambda_list: Vec<OscillatorConfig>,
    pub states: Vec<QuasiParticleState>,
    pub orders: Vec<TableOrder>,
    pub grid: GridConfig,
    /// Lattice levels computed per coupling.
    pub levels: usize,
    /// Fock cutoff per mode.
    pub cutoff: usize,
    pub reference: ReferenceSource,
    pub label_rule: LabelRule,
    pub degenerate_variant: DegenerateChoice,
    pub tolerances: Tolerances,
    pub seed: u64,
    /// Seconds since the Unix epoch when the manifest was created.
    pub timestamp: u64,
}

impl Default for RunManifest {
    fn default() -> Self {
        Self {
            lambda_list: TABLE_LAMBDAS
                .iter()
                .map(|&l| OscillatorConfig::new(l).expect("positive"))
                .collect(),
            states: TABLE_STATES.to_vec(),
            orders: vec![TableOrder::Leading, TableOrder::Second],
            grid: GridConfig::default(),
            levels: 30,
            cutoff: 50,
            reference: ReferenceSource::default(),
            label_rule: LabelRule::default(),
            degenerate_variant: DegenerateChoice::default(),
            tolerances: Tolerances::default(),
            seed: SolverOptions::default().seed,
            timestamp: 0,
        }
    }
}

impl RunManifest {
    pub fn stamped(mut self) -> Self {
        self.timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.tolerances.validate()?;
        if self.levels == 0 {
            return Err(CliError::Manifest("levels must be positive".into()));
        }
        if self.cutoff == 0 {
            return Err(CliError::Manifest("cutoff must be positive".into()));
        }
        Ok(())
    }

    pub fn estimate_options(&self) -> EstimateOptions {
        EstimateOptions {
            degenerate: DegenerateHandling::Auto(self.degenerate_variant.into()),
            ..Default::default()
        }
    }

    pub fn solver_options(&self) -> SolverOptions {
        SolverOptions {
            seed: self.seed,
            ..Default::default()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest is plain data")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: Self = serde_json::from_str(text).map_err(|e| CliError::Manifest(e.to_string()))?;
        m.validate()?;
        Ok(m)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }
}

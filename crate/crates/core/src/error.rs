use thiserror::Error;

use crate::types::{GammaPair, QuasiParticleState};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("coupling constant must be positive and finite, got {0}")]
    InvalidCoupling(f64),

    #[error("variational frequencies must be positive and finite, got ({0}, {1})")]
    InvalidGamma(f64, f64),

    #[error("unsupported transition channel ({0}, {1})")]
    UnsupportedChannel(i32, i32),

    #[error(
        "gamma minimization for state {state} did not converge; best iterate {best} \
         with E = {energy} and max |residual| = {residual:.3e}"
    )]
    NotConverged {
        state: QuasiParticleState,
        best: GammaPair,
        energy: f64,
        residual: f64,
    },

    #[error(
        "state {state} is degenerate with {partner} (transition energy {denominator:.3e}); \
         use the degenerate branch"
    )]
    Degenerate {
        state: QuasiParticleState,
        partner: QuasiParticleState,
        denominator: f64,
    },

    #[error("state {0} has no degenerate partner (needs n2 >= 2)")]
    NoDegeneratePartner(QuasiParticleState),

    #[error("invalid Fock cutoff {0}")]
    InvalidCutoff(usize),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("requested {requested} eigenpairs from an operator of dimension {dimension}")]
    InvalidEigenCount { requested: usize, dimension: usize },

    #[error("eigensolver did not converge; residual norms {residuals:?}")]
    EigenNotConverged { residuals: Vec<f64> },

    #[error("ambiguous label for state {state}: best candidates {candidates:?}")]
    LabelAmbiguous {
        state: QuasiParticleState,
        /// (level index, energy, squared overlap)
        candidates: Vec<(usize, f64, f64)>,
    },

    #[error("not enough levels to label state {0}")]
    MissingLevel(QuasiParticleState),

    #[error("malformed dump: {0}")]
    MalformedDump(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

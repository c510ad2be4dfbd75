use super::grid::GridConfig;
use super::hermite::hermite_functions;
use crate::adaptive::{gamma_minimize, MinimizeOptions};
use crate::error::{Error, Result};
use crate::types::{
    Eigenpair, GammaPair, LabelRule, LabeledLevel, OscillatorConfig, QuasiParticleState,
};

/// Spectrum position of `state` under [`LabelRule::ShellOrder`].
pub fn shell_order_index(state: QuasiParticleState) -> usize {
    let shell = state.shell() as usize;
    let lo = state.n1.min(state.n2) as usize;
    let start = shell * (shell + 1) / 2;
    let diagonal = usize::from(shell.is_multiple_of(2));
    if 2 * lo == shell {
        start
    } else {
        start + diagonal + 2 * lo
    }
}

fn trial_vector(grid: GridConfig, state: QuasiParticleState, gamma: GammaPair) -> Vec<f64> {
    let x = grid.nodes();
    let f1: Vec<f64> = x
        .iter()
        .map(|&v| hermite_functions(state.n1 as usize, gamma.gamma1(), v)[state.n1 as usize])
        .collect();
    let f2: Vec<f64> = x
        .iter()
        .map(|&v| hermite_functions(state.n2 as usize, gamma.gamma2(), v)[state.n2 as usize])
        .collect();
    let mut t: Vec<f64> = f1
        .iter()
        .flat_map(|a| f2.iter().map(move |b| a * b))
        .collect();
    let norm = t.iter().map(|v| v * v).sum::<f64>().sqrt();
    t.iter_mut().for_each(|v| *v /= norm);
    t
}

fn squared_overlap(v: &[f64], t: &[f64]) -> f64 {
    let d: f64 = v.iter().zip(t).map(|(a, b)| a * b).sum();
    d * d
}

/// Squared overlap of a unit grid vector with `h_{n1}(x1; γ1) h_{n2}(x2; γ2)`
/// sampled on the same grid and normalized there.
pub fn trial_overlap(
    pair: &Eigenpair,
    grid: GridConfig,
    state: QuasiParticleState,
    gamma: GammaPair,
) -> f64 {
    squared_overlap(&pair.vector, &trial_vector(grid, state, gamma))
}

/// Assigns each of `states` a level from `pairs` (ascending, unit vectors on
/// `grid`). Results follow the order of `states`.
pub fn label_levels(
    pairs: &[Eigenpair],
    grid: GridConfig,
    cfg: OscillatorConfig,
    states: &[QuasiParticleState],
    rule: LabelRule,
) -> Result<Vec<LabeledLevel>> {
    let opts = MinimizeOptions::default();
    let trials = states
        .iter()
        .map(|&s| gamma_minimize(s, cfg, &opts).map(|(g, _)| trial_vector(grid, s, g)))
        .collect::<Result<Vec<_>>>()?;
    match rule {
        LabelRule::ShellOrder => states
            .iter()
            .zip(&trials)
            .map(|(&state, t)| {
                let index = shell_order_index(state);
                let pair = pairs.get(index).ok_or(Error::MissingLevel(state))?;
                Ok(LabeledLevel {
                    state,
                    index,
                    energy: pair.value,
                    overlap: squared_overlap(&pair.vector, t),
                })
            })
            .collect(),
        LabelRule::Overlap => {
            let table: Vec<Vec<f64>> = trials
                .iter()
                .map(|t| {
                    pairs
                        .iter()
                        .map(|p| squared_overlap(&p.vector, t))
                        .collect()
                })
                .collect();
            assign_by_overlap(states, &table, |_, l| pairs[l].value)
        }
    }
}

/// Greedy injective matching on `table[state][level]` squared overlaps.
pub(crate) fn assign_by_overlap(
    states: &[QuasiParticleState],
    table: &[Vec<f64>],
    energy: impl Fn(usize, usize) -> f64,
) -> Result<Vec<LabeledLevel>> {
    let levels = table.first().map_or(0, Vec::len);
    let mut order: Vec<(usize, usize)> = (0..states.len())
        .flat_map(|s| (0..levels).map(move |l| (s, l)))
        .collect();
    order.sort_by(|a, b| table[b.0][b.1].total_cmp(&table[a.0][a.1]).then(a.cmp(b)));
    let mut level_of = vec![None; states.len()];
    let mut taken = vec![false; levels];
    for (s, l) in order {
        if level_of[s].is_none() && !taken[l] {
            level_of[s] = Some(l);
            taken[l] = true;
        }
    }
    states
        .iter()
        .enumerate()
        .map(|(s, &state)| {
            let index = level_of[s].ok_or(Error::MissingLevel(state))?;
            let overlap = table[s][index];
            if overlap <= 0.5 {
                let mut candidates: Vec<(usize, f64, f64)> = table[s]
                    .iter()
                    .enumerate()
                    .map(|(l, &o)| (l, energy(s, l), o))
                    .collect();
                candidates.sort_by(|a, b| b.2.total_cmp(&a.2));
                candidates.truncate(3);
                return Err(Error::LabelAmbiguous { state, candidates });
            }
            Ok(LabeledLevel {
                state,
                index,
                energy: energy(s, index),
                overlap,
            })
        })
        .collect()
}

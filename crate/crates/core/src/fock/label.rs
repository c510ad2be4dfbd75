use super::basis::FockBasis;
use super::eigen::{diagonalize, overlap_with_basis_state};
use super::hamiltonian::build_full_hamiltonian;
use crate::adaptive::{gamma_minimize, MinimizeOptions};
use crate::error::{Error, Result};
use crate::lattice::{assign_by_overlap, shell_order_index};
use crate::types::{LabelRule, LabeledLevel, OscillatorConfig, QuasiParticleState};

/// Labels `levels` lowest eigenvalues of the truncated Hamiltonian.
///
/// [`LabelRule::ShellOrder`] diagonalizes once in the basis of γ*(0, 0).
/// [`LabelRule::Overlap`] diagonalizes in the basis of each state's own γ*
/// and matches by the weight of the basis state `|n1, n2⟩`.
pub fn label_fock_levels(
    cfg: OscillatorConfig,
    cutoff: usize,
    levels: usize,
    states: &[QuasiParticleState],
    rule: LabelRule,
) -> Result<Vec<LabeledLevel>> {
    let opts = MinimizeOptions::default();
    let solve = |state: QuasiParticleState| -> Result<(FockBasis, Vec<crate::types::Eigenpair>)> {
        let (gamma, _) = gamma_minimize(state, cfg, &opts)?;
        let basis = FockBasis::new(cutoff, gamma)?;
        let h = build_full_hamiltonian(cfg, &basis);
        let k = levels.min(basis.dimension());
        Ok((basis, diagonalize(&h, k)?))
    };
    match rule {
        LabelRule::ShellOrder => {
            let (basis, pairs) = solve(QuasiParticleState::new(0, 0))?;
            states
                .iter()
                .map(|&state| {
                    let index = shell_order_index(state);
                    let pair = pairs.get(index).ok_or(Error::MissingLevel(state))?;
                    Ok(LabeledLevel {
                        state,
                        index,
                        energy: pair.value,
                        overlap: overlap_with_basis_state(pair, &basis, state),
                    })
                })
                .collect()
        }
        LabelRule::Overlap => {
            let solved = states
                .iter()
                .map(|&s| solve(s))
                .collect::<Result<Vec<_>>>()?;
            let table: Vec<Vec<f64>> = states
                .iter()
                .zip(&solved)
                .map(|(&s, (basis, pairs))| {
                    pairs
                        .iter()
                        .map(|p| overlap_with_basis_state(p, basis, s))
                        .collect()
                })
                .collect();
            assign_by_overlap(states, &table, |s, l| solved[s].1[l].value)
        }
    }
}

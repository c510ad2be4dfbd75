//! Adaptive perturbation theory.
//!
//! Writing `x = (A† + A)/√(2γ)` and `p = i√(γ/2)(A† − A)` for each mode splits
//! the Hamiltonian into `H0(γ1, γ2)`, diagonal in the number basis
//! `|n1, n2⟩`, and an off-diagonal remainder `V(γ1, γ2)`. The leading-order
//! energy of a state is its `H0` eigenvalue minimized over γ; the second-order
//! correction sums the twelve channels through which `V` connects the state to
//! others.

mod energy;
mod minimize;
mod second_order;
mod transition;

pub use energy::{leading_energy, stationarity_residuals, PerturbationCoefficients};
pub use minimize::{gamma_minimize, MinimizeOptions};
pub use second_order::{
    coupling_element, degenerate_correction, degenerate_partner, estimate, pair_splitting_matrix,
    second_order_energy, second_order_terms, ChannelTerm, DegenerateHandling, DegeneratePartner,
    DegenerateVariant, EstimateOptions, PerturbativeOrder, DEGENERACY_THRESHOLD,
};
pub use transition::{transition_energy, Channel};

//! Finite-difference reference spectrum on a square grid.
//!
//! The Laplacian uses the three-point stencil in each direction with
//! Dirichlet boundaries, nodes at `x_j = −L + (j + ½)a` for `j = 0..n`. The
//! Hamiltonian commutes with both reflections `x_i → −x_i`, so the solver works
//! on the four parity sectors of one quadrant independently. Exchange-degenerate
//! doublets always sit in different sectors.

mod dump;
mod grid;
mod hamiltonian;
mod hermite;
mod label;
mod potential;
mod solver;

pub use crate::types::{LabelRule, LabeledLevel};
pub use dump::{read_eigenvectors, write_eigenvectors, EigenvectorDump};
pub use grid::GridConfig;
pub use hamiltonian::{build_lattice_hamiltonian, LatticeHamiltonian, Parity, Sector};
pub use hermite::{hermite_function, hermite_functions};
pub(crate) use label::assign_by_overlap;
pub use label::{label_levels, shell_order_index, trial_overlap};
pub use potential::Potential;
pub use solver::{solve_lowest, SolverOptions};

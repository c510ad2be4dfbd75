//! The Hamiltonian as an explicit matrix in a truncated two-mode Fock basis.

mod basis;
mod eigen;
mod hamiltonian;
mod label;
mod operator;

pub use basis::FockBasis;
pub use eigen::{diagonalize, overlap_with_basis_state};
pub use hamiltonian::{build_full_hamiltonian, build_hamiltonian, build_ladder, OPERATOR_PADDING};
pub use label::label_fock_levels;
pub use operator::OperatorMatrix;

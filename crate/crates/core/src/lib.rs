//! Energy spectra of the symmetric coupled double quartic oscillator
//!
//! ```text
//! H = p1²/2 + p2²/2 + (λ/6)(x1⁴ + x2⁴) + (λ/3)(x1² + x2²) + λ x1² x2²
//! ```
//!
//! computed three ways:
//!
//! * [`adaptive`]: adaptive perturbation theory. The Hamiltonian is split into a
//!   part that is diagonal in a Fock basis of variational frequency γ and an
//!   off-diagonal perturbation. γ is fixed per state by minimizing the diagonal
//!   (leading-order) energy, and the off-diagonal part is treated to second
//!   order, with a 2×2 secular treatment for exchange-degenerate pairs.
//! * [`fock`]: the same Hamiltonian as an explicit matrix in a truncated
//!   two-mode Fock basis, diagonalized densely. Used as a brute-force oracle.
//! * [`lattice`]: finite-difference discretization on a 2D grid, solved with a
//!   matrix-free shift-invert Lanczos iteration.

pub mod adaptive;
pub mod error;
pub mod fock;
pub mod lattice;
pub mod types;

pub use error::{Error, Result};
pub use types::{
    Eigenpair, EnergyEstimate, GammaPair, LabelRule, LabeledLevel, Order, OscillatorConfig,
    QuasiParticleState,
};

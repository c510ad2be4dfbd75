use std::fmt;

use super::grid::GridConfig;
use super::potential::Potential;
use crate::types::OscillatorConfig;

/// Reflection parity of a wavefunction along one axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

/// Joint parity under `x1 → −x1` and `x2 → −x2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sector {
    pub p1: Parity,
    pub p2: Parity,
}

impl Sector {
    pub const ALL: [Sector; 4] = [
        Sector {
            p1: Parity::Even,
            p2: Parity::Even,
        },
        Sector {
            p1: Parity::Even,
            p2: Parity::Odd,
        },
        Sector {
            p1: Parity::Odd,
            p2: Parity::Even,
        },
        Sector {
            p1: Parity::Odd,
            p2: Parity::Odd,
        },
    ];
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |p: Parity| if p == Parity::Even { '+' } else { '-' };
        write!(f, "{}{}", c(self.p1), c(self.p2))
    }
}

/// `−Δ/2 + V` on the grid, applied matrix-free.
///
/// Vectors are indexed `i1 · n + i2` with `i1` the `x1` node.
#[derive(Debug, Clone)]
pub struct LatticeHamiltonian {
    grid: GridConfig,
    potential: Potential,
    values: Vec<f64>,
}

pub fn build_lattice_hamiltonian(cfg: OscillatorConfig, grid: GridConfig) -> LatticeHamiltonian {
    LatticeHamiltonian::with_potential(grid, Potential::Quartic(cfg))
}

impl LatticeHamiltonian {
    pub fn with_potential(grid: GridConfig, potential: Potential) -> Self {
        let x = grid.nodes();
        let values = x
            .iter()
            .flat_map(|&a| x.iter().map(move |&b| potential.value(a, b)))
            .collect();
        Self {
            grid,
            potential,
            values,
        }
    }

    pub fn grid(&self) -> GridConfig {
        self.grid
    }

    pub fn potential(&self) -> Potential {
        self.potential
    }

    pub fn dimension(&self) -> usize {
        self.grid.dimension()
    }

    /// Potential at node `(i1, i2)`.
    pub fn potential_at(&self, i1: usize, i2: usize) -> f64 {
        self.values[i1 * self.grid.points_per_dim() + i2]
    }

    /// `y = H x`.
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        let n = self.grid.points_per_dim();
        assert_eq!(x.len(), n * n);
        assert_eq!(y.len(), n * n);
        let a2 = self.grid.spacing().powi(2);
        let diag = 2.0 / a2;
        let off = 0.5 / a2;
        for i in 0..n {
            for j in 0..n {
                let k = i * n + j;
                let mut s = (diag + self.values[k]) * x[k];
                if i > 0 {
                    s -= off * x[k - n];
                }
                if i + 1 < n {
                    s -= off * x[k + n];
                }
                if j > 0 {
                    s -= off * x[k - 1];
                }
                if j + 1 < n {
                    s -= off * x[k + 1];
                }
                y[k] = s;
            }
        }
    }

    pub(crate) fn sector(&self, sector: Sector) -> SectorOperator {
        SectorOperator::new(self, sector)
    }
}

/// The Hamiltonian restricted to one parity sector, acting on the quadrant
/// `x1, x2 > 0`.
#[derive(Debug, Clone)]
pub(crate) struct SectorOperator {
    pub(crate) sector: Sector,
    pub(crate) m: usize,
    pub(crate) off: f64,
    pub(crate) diag: Vec<f64>,
}

/// Kinetic diagonal of node `i` of the half line: the mirror image of node 0
/// is its own neighbour across the origin, entering with the parity sign.
pub(crate) fn half_line_kinetic_diag(i: usize, parity: Parity, a2: f64) -> f64 {
    if i == 0 {
        (1.0 - 0.5 * parity.sign()) / a2
    } else {
        1.0 / a2
    }
}

impl SectorOperator {
    fn new(h: &LatticeHamiltonian, sector: Sector) -> Self {
        let n = h.grid.points_per_dim();
        let m = n / 2;
        let a2 = h.grid.spacing().powi(2);
        let mut diag = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                diag.push(
                    half_line_kinetic_diag(i, sector.p1, a2)
                        + half_line_kinetic_diag(j, sector.p2, a2)
                        + h.potential_at(m + i, m + j),
                );
            }
        }
        Self {
            sector,
            m,
            off: 0.5 / a2,
            diag,
        }
    }

    pub(crate) fn dimension(&self) -> usize {
        self.m * self.m
    }

    pub(crate) fn apply(&self, x: &[f64], y: &mut [f64]) {
        let m = self.m;
        let off = self.off;
        for i in 0..m {
            let row = i * m;
            for j in 0..m {
                let k = row + j;
                let mut s = self.diag[k] * x[k];
                if i > 0 {
                    s -= off * x[k - m];
                }
                if i + 1 < m {
                    s -= off * x[k + m];
                }
                if j > 0 {
                    s -= off * x[k - 1];
                }
                if j + 1 < m {
                    s -= off * x[k + 1];
                }
                y[k] = s;
            }
        }
    }

    /// Extends a quadrant vector to the full grid by reflection, preserving
    /// the norm.
    pub(crate) fn unfold(&self, q: &[f64]) -> Vec<f64> {
        let m = self.m;
        let n = 2 * m;
        let (s1, s2) = (self.sector.p1.sign(), self.sector.p2.sign());
        let mut full = vec![0.0; n * n];
        for i in 0..m {
            for j in 0..m {
                let v = 0.5 * q[i * m + j];
                let (hi, lo) = (m + i, m - 1 - i);
                let (hj, lj) = (m + j, m - 1 - j);
                full[hi * n + hj] = v;
                full[lo * n + hj] = s1 * v;
                full[hi * n + lj] = s2 * v;
                full[lo * n + lj] = s1 * s2 * v;
            }
        }
        full
    }
}

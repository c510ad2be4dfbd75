use crate::error::{Error, Result};
use crate::types::{GammaPair, QuasiParticleState};

/// Product states `|n1, n2⟩` with `0 ≤ n1, n2 ≤ cutoff`, built on the vacuum of
/// frequencies `gamma`.
///
/// The flat index is `n1 · (cutoff + 1) + n2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockBasis {
    cutoff: usize,
    gamma: GammaPair,
}

impl FockBasis {
    pub fn new(cutoff: usize, gamma: GammaPair) -> Result<Self> {
        if cutoff == 0 {
            return Err(Error::InvalidCutoff(cutoff));
        }
        Ok(Self { cutoff, gamma })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn gamma(&self) -> GammaPair {
        self.gamma
    }

    /// Occupations per mode, `cutoff + 1`.
    pub fn modes(&self) -> usize {
        self.cutoff + 1
    }

    pub fn dimension(&self) -> usize {
        self.modes() * self.modes()
    }

    pub fn index(&self, state: QuasiParticleState) -> Option<usize> {
        let (n1, n2) = (state.n1 as usize, state.n2 as usize);
        (n1 <= self.cutoff && n2 <= self.cutoff).then(|| n1 * self.modes() + n2)
    }

    pub fn state(&self, index: usize) -> Option<QuasiParticleState> {
        (index < self.dimension()).then(|| {
            QuasiParticleState::new((index / self.modes()) as u32, (index % self.modes()) as u32)
        })
    }

    pub fn states(&self) -> impl Iterator<Item = QuasiParticleState> + '_ {
        (0..self.dimension()).map(|i| self.state(i).expect("in range"))
    }
}

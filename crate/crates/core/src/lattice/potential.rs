use crate::types::OscillatorConfig;

/// Potential energy on the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Potential {
    /// The coupled double quartic potential.
    Quartic(OscillatorConfig),
    /// `ω² (x1² + x2²) / 2`.
    Harmonic {
        omega: f64,
    },
    Free,
}

impl Potential {
    pub fn value(&self, x1: f64, x2: f64) -> f64 {
        match *self {
            Potential::Quartic(cfg) => {
                let (l, lp) = (cfg.lambda(), cfg.lambda_prime());
                let (s1, s2) = (x1 * x1, x2 * x2);
                l / 6.0 * (s1 * s1 + s2 * s2) + lp / 3.0 * (s1 + s2) + l * s1 * s2
            }
            Potential::Harmonic { omega } => 0.5 * omega * omega * (x1 * x1 + x2 * x2),
            Potential::Free => 0.0,
        }
    }

    /// A one-dimensional `u` with `u(x1) + u(x2) ≤ V(x1, x2) ≤ 4 (u(x1) + u(x2))`.
    pub(crate) fn separable(&self, x: f64) -> f64 {
        match *self {
            Potential::Quartic(cfg) => {
                let s = x * x;
                cfg.lambda() / 6.0 * s * s + cfg.lambda_prime() / 3.0 * s
            }
            _ => self.value(x, 0.0),
        }
    }
}

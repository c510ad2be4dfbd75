use crate::types::{GammaPair, OscillatorConfig, QuasiParticleState};

/// Diagonal energy contributed by one mode, without the inter-mode term.
#[inline]
fn mode_energy(g: f64, n: f64, lam: f64) -> f64 {
    (g / 4.0 + lam / (4.0 * g * g) + lam / (6.0 * g)) * (2.0 * n + 0.5)
        + lam / (4.0 * g * g) * n * (n - 1.0)
        + g / 8.0
        + lam / (12.0 * g)
}

#[inline]
fn mode_derivative(g: f64, n: f64, lam: f64) -> f64 {
    let g2 = g * g;
    let g3 = g2 * g;
    (0.25 - lam / (2.0 * g3) - lam / (6.0 * g2)) * (2.0 * n + 0.5)
        - lam / (2.0 * g3) * n * (n - 1.0)
        + 0.125
        - lam / (12.0 * g2)
}

#[inline]
fn mode_second_derivative(g: f64, n: f64, lam: f64) -> f64 {
    let g3 = g * g * g;
    let g4 = g3 * g;
    (3.0 * lam / (2.0 * g4) + lam / (3.0 * g3)) * (2.0 * n + 0.5)
        + 3.0 * lam / (2.0 * g4) * n * (n - 1.0)
        + lam / (6.0 * g3)
}

#[inline]
fn occupation_product(n1: f64, n2: f64) -> f64 {
    (2.0 * n1 + 1.0) * (2.0 * n2 + 1.0)
}

pub(crate) fn energy_raw(n1: f64, n2: f64, g1: f64, g2: f64, lam: f64) -> f64 {
    mode_energy(g1, n1, lam)
        + mode_energy(g2, n2, lam)
        + lam / (4.0 * g1 * g2) * occupation_product(n1, n2)
}

pub(crate) fn gradient_raw(n1: f64, n2: f64, g1: f64, g2: f64, lam: f64) -> (f64, f64) {
    let w = lam * occupation_product(n1, n2) / 4.0;
    (
        mode_derivative(g1, n1, lam) - w / (g1 * g1 * g2),
        mode_derivative(g2, n2, lam) - w / (g1 * g2 * g2),
    )
}

/// Hessian entries (∂²/∂γ1², ∂²/∂γ1∂γ2, ∂²/∂γ2²).
pub(crate) fn hessian_raw(n1: f64, n2: f64, g1: f64, g2: f64, lam: f64) -> (f64, f64, f64) {
    let w = lam * occupation_product(n1, n2) / 4.0;
    (
        mode_second_derivative(g1, n1, lam) + 2.0 * w / (g1 * g1 * g1 * g2),
        w / (g1 * g1 * g2 * g2),
        mode_second_derivative(g2, n2, lam) + 2.0 * w / (g1 * g2 * g2 * g2),
    )
}

/// `⟨n1, n2| H0(γ1, γ2) |n1, n2⟩`, which is also `⟨n1, n2| H |n1, n2⟩`.
pub fn leading_energy(state: QuasiParticleState, gamma: GammaPair, cfg: OscillatorConfig) -> f64 {
    energy_raw(
        f64::from(state.n1),
        f64::from(state.n2),
        gamma.gamma1(),
        gamma.gamma2(),
        cfg.lambda(),
    )
}

/// Partial derivatives `(∂E/∂γ1, ∂E/∂γ2)` of [`leading_energy`].
pub fn stationarity_residuals(
    state: QuasiParticleState,
    gamma: GammaPair,
    cfg: OscillatorConfig,
) -> (f64, f64) {
    gradient_raw(
        f64::from(state.n1),
        f64::from(state.n2),
        gamma.gamma1(),
        gamma.gamma2(),
        cfg.lambda(),
    )
}

/// Coefficients of the off-diagonal operator strings in `V(γ1, γ2)`.
///
/// * `a1`, `b1`: `A†² + A²` of mode 1 / mode 2
/// * `a2`, `b2`: `A†⁴ + A⁴`
/// * `a3`, `b3`: `A†³A + A†A³`
/// * `c`: every inter-mode string, from `λ x1² x2²`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationCoefficients {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    pub c: f64,
}

impl PerturbationCoefficients {
    pub fn new(gamma: GammaPair, cfg: OscillatorConfig) -> Self {
        let lam = cfg.lambda();
        let (g1, g2) = (gamma.gamma1(), gamma.gamma2());
        let quadratic = |g: f64| -g / 4.0 + lam / (4.0 * g * g) + lam / (6.0 * g);
        Self {
            a1: quadratic(g1),
            a2: lam / (24.0 * g1 * g1),
            a3: lam / (6.0 * g1 * g1),
            b1: quadratic(g2),
            b2: lam / (24.0 * g2 * g2),
            b3: lam / (6.0 * g2 * g2),
            c: lam / (4.0 * g1 * g2),
        }
    }
}

//! Stationary points of the leading-order energy in (γ1, γ2).

use super::energy::{energy_raw, gradient_raw, hessian_raw};
use crate::error::{Error, Result};
use crate::types::{GammaPair, OscillatorConfig, QuasiParticleState};

#[derive(Debug, Clone, PartialEq)]
pub struct MinimizeOptions {
    /// Starting values per component; Newton is started from every pair.
    pub starts: Vec<f64>,
    /// Absolute tolerance on each of ∂E/∂γ1, ∂E/∂γ2.
    pub tolerance: f64,
    /// Newton iterations allowed per start.
    pub max_iterations: usize,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self {
            starts: vec![0.5, 1.0, 2.0, 4.0, 8.0, 16.0],
            tolerance: 1e-10,
            max_iterations: 200,
        }
    }
}

struct Iterate {
    g: (f64, f64),
    energy: f64,
    residual: f64,
}

const MAX_HALVINGS: usize = 60;

fn max_abs(r: (f64, f64)) -> f64 {
    r.0.abs().max(r.1.abs())
}

/// Damped Newton on the gradient from one start. Returns the last iterate and
/// whether it satisfies the tolerance.
fn newton(n: (f64, f64), lam: f64, start: (f64, f64), opts: &MinimizeOptions) -> (Iterate, bool) {
    let eval = |g: (f64, f64)| {
        let r = gradient_raw(n.0, n.1, g.0, g.1, lam);
        (r, r.0.hypot(r.1))
    };
    let mut g = start;
    let (mut r, mut norm) = eval(g);
    for _ in 0..opts.max_iterations {
        if max_abs(r) < opts.tolerance {
            break;
        }
        let (h11, h12, h22) = hessian_raw(n.0, n.1, g.0, g.1, lam);
        let det = h11 * h22 - h12 * h12;
        let step = if det.abs() > f64::EPSILON * (h11 * h22).abs() {
            (
                (-h22 * r.0 + h12 * r.1) / det,
                (h12 * r.0 - h11 * r.1) / det,
            )
        } else {
            // singular Hessian: fall back to a scaled gradient step
            (
                -r.0 * g.0 / h11.abs().max(1.0),
                -r.1 * g.1 / h22.abs().max(1.0),
            )
        };
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..MAX_HALVINGS {
            let trial = (g.0 + t * step.0, g.1 + t * step.1);
            if trial.0 > 0.0 && trial.1 > 0.0 {
                let (tr, tn) = eval(trial);
                if tn < norm || max_abs(tr) < opts.tolerance {
                    accepted = Some((trial, tr, tn));
                    break;
                }
            }
            t *= 0.5;
        }
        match accepted {
            Some((trial, tr, tn)) => {
                g = trial;
                r = tr;
                norm = tn;
            }
            None => break,
        }
    }
    let converged = max_abs(r) < opts.tolerance;
    (
        Iterate {
            g,
            energy: energy_raw(n.0, n.1, g.0, g.1, lam),
            residual: max_abs(r),
        },
        converged,
    )
}

/// The variational frequencies minimizing the leading-order energy of `state`,
/// together with the minimal energy.
///
/// Newton is run from every pair of `opts.starts`; among the converged
/// stationary points the one with the lowest energy wins.
pub fn gamma_minimize(
    state: QuasiParticleState,
    cfg: OscillatorConfig,
    opts: &MinimizeOptions,
) -> Result<(GammaPair, f64)> {
    let n = (f64::from(state.n1), f64::from(state.n2));
    let lam = cfg.lambda();
    let mut best: Option<Iterate> = None;
    let mut best_failed: Option<Iterate> = None;
    for &s1 in &opts.starts {
        for &s2 in &opts.starts {
            let (it, ok) = newton(n, lam, (s1, s2), opts);
            let slot = if ok { &mut best } else { &mut best_failed };
            let better = match slot {
                Some(b) if ok => it.energy < b.energy,
                Some(b) => it.residual < b.residual,
                None => true,
            };
            if better && it.energy.is_finite() {
                *slot = Some(it);
            }
        }
    }
    match best {
        Some(it) => Ok((GammaPair::new(it.g.0, it.g.1)?, it.energy)),
        None => {
            let it = best_failed.map_or(
                Iterate {
                    g: (1.0, 1.0),
                    energy: f64::NAN,
                    residual: f64::INFINITY,
                },
                |it| it,
            );
            Err(Error::NotConverged {
                state,
                best: GammaPair::new(it.g.0, it.g.1)?,
                energy: it.energy,
                residual: it.residual,
            })
        }
    }
}

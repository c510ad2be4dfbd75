//! Second-order corrections and the exchange-degenerate branch.

use super::energy::{leading_energy, PerturbationCoefficients};
use super::minimize::{gamma_minimize, MinimizeOptions};
use super::transition::{transition_energy, Channel};
use crate::error::{Error, Result};
use crate::types::{EnergyEstimate, GammaPair, Order, OscillatorConfig, QuasiParticleState};

/// Relative size below which a transition energy counts as zero.
pub const DEGENERACY_THRESHOLD: f64 = 1e-6;

fn sqrt_product(factors: &[i64]) -> f64 {
    if factors.iter().any(|&f| f <= 0) {
        0.0
    } else {
        (factors.iter().map(|&f| f as f64).product::<f64>()).sqrt()
    }
}

/// `⟨state + channel| V |state⟩`, exactly zero when the target state does not exist.
pub fn coupling_element(
    state: QuasiParticleState,
    k: &PerturbationCoefficients,
    channel: Channel,
) -> f64 {
    if state.shifted(channel.delta()).is_none() {
        return 0.0;
    }
    let (n1, n2) = (i64::from(state.n1), i64::from(state.n2));
    let (f1, f2) = (n1 as f64, n2 as f64);
    match channel.delta() {
        (-2, 0) => (k.a1 + k.a3 * (f1 - 2.0) + 2.0 * k.c * f2 + k.c) * sqrt_product(&[n1 - 1, n1]),
        (2, 0) => (k.a1 + k.a3 * f1 + 2.0 * k.c * f2 + k.c) * sqrt_product(&[n1 + 1, n1 + 2]),
        (-4, 0) => k.a2 * sqrt_product(&[n1 - 3, n1 - 2, n1 - 1, n1]),
        (4, 0) => k.a2 * sqrt_product(&[n1 + 4, n1 + 3, n1 + 2, n1 + 1]),
        (0, -2) => (k.b1 + k.b3 * (f2 - 2.0) + 2.0 * k.c * f1 + k.c) * sqrt_product(&[n2 - 1, n2]),
        (0, 2) => (k.b1 + k.b3 * f2 + 2.0 * k.c * f1 + k.c) * sqrt_product(&[n2 + 1, n2 + 2]),
        (0, -4) => k.b2 * sqrt_product(&[n2 - 3, n2 - 2, n2 - 1, n2]),
        (0, 4) => k.b2 * sqrt_product(&[n2 + 4, n2 + 3, n2 + 2, n2 + 1]),
        (-2, -2) => k.c * sqrt_product(&[n1 - 1, n1, n2 - 1, n2]),
        (-2, 2) => k.c * sqrt_product(&[n1 - 1, n1, n2 + 2, n2 + 1]),
        (2, -2) => k.c * sqrt_product(&[n1 + 2, n1 + 1, n2 - 1, n2]),
        (2, 2) => k.c * sqrt_product(&[n1 + 2, n1 + 1, n2 + 2, n2 + 1]),
        _ => unreachable!("Channel values are restricted to Channel::ALL"),
    }
}

/// One summand of the second-order sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelTerm {
    pub channel: Channel,
    /// `⟨k|V|n⟩`; the contribution is `element² / denominator`.
    pub element: f64,
    /// `None` when `element` is zero and the denominator was never formed.
    pub denominator: Option<f64>,
    pub contribution: f64,
}

fn is_degenerate_denominator(denominator: f64, e0: f64) -> bool {
    denominator.abs() < DEGENERACY_THRESHOLD * e0.abs().max(1.0)
}

/// All twelve second-order summands at fixed γ. Channels with a vanishing
/// matrix element contribute exactly zero.
///
/// `skip` excludes one channel (used for the residual sum of a degenerate
/// pair). Any remaining channel with a degenerate denominator is an error.
pub fn second_order_terms(
    state: QuasiParticleState,
    gamma: GammaPair,
    cfg: OscillatorConfig,
    skip: Option<Channel>,
) -> Result<Vec<ChannelTerm>> {
    let k = PerturbationCoefficients::new(gamma, cfg);
    let e0 = leading_energy(state, gamma, cfg);
    let mut terms = Vec::with_capacity(Channel::ALL.len());
    for channel in Channel::ALL {
        let element = coupling_element(state, &k, channel);
        if element == 0.0 || Some(channel) == skip {
            terms.push(ChannelTerm {
                channel,
                element,
                denominator: None,
                contribution: 0.0,
            });
            continue;
        }
        let denominator = transition_energy(state, gamma, cfg, channel);
        if is_degenerate_denominator(denominator, e0) {
            return Err(Error::Degenerate {
                state,
                partner: state.shifted(channel.delta()).expect("nonzero element"),
                denominator,
            });
        }
        terms.push(ChannelTerm {
            channel,
            element,
            denominator: Some(denominator),
            contribution: element * element / denominator,
        });
    }
    Ok(terms)
}

/// A state connected by an exchange channel to a partner it is degenerate with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegeneratePartner {
    pub partner: QuasiParticleState,
    pub channel: Channel,
    /// Transition energy to the partner at the state's own γ.
    pub denominator: f64,
    /// True when the partner is the mode-exchanged state, so the two levels
    /// coincide by symmetry of the Hamiltonian whatever γ is.
    pub by_exchange: bool,
}

/// Detects the degenerate-pair situation for `state` at `gamma`.
///
/// Only the exchange channels (+2, −2) and (−2, +2) can pair a state with a
/// degenerate partner. A pair is flagged when the partner is the exchanged
/// state `(n2, n1)`, or when the transition energy is numerically zero.
pub fn degenerate_partner(
    state: QuasiParticleState,
    gamma: GammaPair,
    cfg: OscillatorConfig,
) -> Option<DegeneratePartner> {
    let k = PerturbationCoefficients::new(gamma, cfg);
    let e0 = leading_energy(state, gamma, cfg);
    [Channel::new(2, -2), Channel::new(-2, 2)]
        .into_iter()
        .map(|c| c.expect("exchange channels are supported"))
        .find_map(|channel| {
            if coupling_element(state, &k, channel) == 0.0 {
                return None;
            }
            let partner = state.shifted(channel.delta())?;
            let denominator = transition_energy(state, gamma, cfg, channel);
            let by_exchange = partner == state.swapped();
            (by_exchange || is_degenerate_denominator(denominator, e0)).then_some(
                DegeneratePartner {
                    partner,
                    channel,
                    denominator,
                    by_exchange,
                },
            )
        })
}

/// First-order splitting `C √((n1+2)(n1+1) n2 (n2−1))` of the pair
/// `|n1, n2⟩, |n1+2, n2−2⟩`, taking the upper root.
pub fn degenerate_correction(
    state: QuasiParticleState,
    gamma: GammaPair,
    cfg: OscillatorConfig,
) -> Result<f64> {
    if state.n2 < 2 {
        return Err(Error::NoDegeneratePartner(state));
    }
    let k = PerturbationCoefficients::new(gamma, cfg);
    let (n1, n2) = (f64::from(state.n1), f64::from(state.n2));
    Ok(k.c * ((n1 + 2.0) * (n1 + 1.0) * n2 * (n2 - 1.0)).sqrt())
}

/// The exchange part of `V` restricted to `{|n1, n2⟩, |n1+2, n2−2⟩}`.
pub fn pair_splitting_matrix(
    state: QuasiParticleState,
    gamma: GammaPair,
    cfg: OscillatorConfig,
) -> Result<[[f64; 2]; 2]> {
    if state.n2 < 2 {
        return Err(Error::NoDegeneratePartner(state));
    }
    let k = PerturbationCoefficients::new(gamma, cfg);
    let partner = state.shifted((2, -2)).expect("n2 >= 2");
    let up = coupling_element(state, &k, Channel::new(2, -2)?);
    let down = coupling_element(partner, &k, Channel::new(-2, 2)?);
    Ok([[0.0, down], [up, 0.0]])
}

/// Nondegenerate second-order energy with γ fixed at the leading-order minimum.
///
/// Fails with [`Error::Degenerate`] when the state has a degenerate partner;
/// use [`estimate`] to pick the branch automatically.
pub fn second_order_energy(
    state: QuasiParticleState,
    cfg: OscillatorConfig,
    opts: &MinimizeOptions,
) -> Result<EnergyEstimate> {
    let (gamma, e_min) = gamma_minimize(state, cfg, opts)?;
    if let Some(p) = degenerate_partner(state, gamma, cfg) {
        return Err(Error::Degenerate {
            state,
            partner: p.partner,
            denominator: p.denominator,
        });
    }
    let correction: f64 = second_order_terms(state, gamma, cfg, None)?
        .iter()
        .map(|t| t.contribution)
        .sum();
    Ok(EnergyEstimate {
        value: e_min + correction,
        order: Order::SecondOrder,
        state,
        gamma,
        lambda: cfg.lambda(),
    })
}

/// What a degenerate-pair estimate includes besides the splitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DegenerateVariant {
    /// `E_min + E¹`.
    #[default]
    SplitOnly,
    /// `E_min + E¹` plus the nondegenerate second-order sum without the
    /// singular channel.
    SplitPlusResidual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerturbativeOrder {
    Leading,
    Second,
}

/// How [`estimate`] treats states with a degenerate partner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegenerateHandling {
    /// Switch to the pair treatment.
    Auto(DegenerateVariant),
    /// Report [`Error::Degenerate`].
    Reject,
}

impl Default for DegenerateHandling {
    fn default() -> Self {
        Self::Auto(DegenerateVariant::default())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EstimateOptions {
    pub minimize: MinimizeOptions,
    pub degenerate: DegenerateHandling,
}

/// Leading- or second-order energy of `state`, selecting the degenerate
/// branch when needed.
pub fn estimate(
    state: QuasiParticleState,
    order: PerturbativeOrder,
    cfg: OscillatorConfig,
    opts: &EstimateOptions,
) -> Result<EnergyEstimate> {
    let (gamma, e_min) = gamma_minimize(state, cfg, &opts.minimize)?;
    let base = EnergyEstimate {
        value: e_min,
        order: Order::LeadingOrder,
        state,
        gamma,
        lambda: cfg.lambda(),
    };
    if order == PerturbativeOrder::Leading {
        return Ok(base);
    }
    let Some(pair) = degenerate_partner(state, gamma, cfg) else {
        let correction: f64 = second_order_terms(state, gamma, cfg, None)?
            .iter()
            .map(|t| t.contribution)
            .sum();
        return Ok(EnergyEstimate {
            value: e_min + correction,
            order: Order::SecondOrder,
            ..base
        });
    };
    let variant = match opts.degenerate {
        DegenerateHandling::Auto(v) => v,
        DegenerateHandling::Reject => {
            return Err(Error::Degenerate {
                state,
                partner: pair.partner,
                denominator: pair.denominator,
            })
        }
    };
    // the splitting formula is written for the (+2, −2) orientation; the
    // (−2, +2) case is its mirror image under mode exchange
    let (split, residual) = if pair.channel.delta() == (2, -2) {
        (
            degenerate_correction(state, gamma, cfg)?,
            residual_sum(state, gamma, cfg, pair.channel, variant)?,
        )
    } else {
        let (s, g) = (state.swapped(), gamma.swapped());
        (
            degenerate_correction(s, g, cfg)?,
            residual_sum(s, g, cfg, pair.channel.swapped(), variant)?,
        )
    };
    Ok(EnergyEstimate {
        value: e_min + split + residual,
        order: Order::SecondOrderDegenerate,
        ..base
    })
}

fn residual_sum(
    state: QuasiParticleState,
    gamma: GammaPair,
    cfg: OscillatorConfig,
    singular: Channel,
    variant: DegenerateVariant,
) -> Result<f64> {
    match variant {
        DegenerateVariant::SplitOnly => Ok(0.0),
        DegenerateVariant::SplitPlusResidual => {
            Ok(second_order_terms(state, gamma, cfg, Some(singular))?
                .iter()
                .map(|t| t.contribution)
                .sum())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(l: f64) -> OscillatorConfig {
        OscillatorConfig::new(l).unwrap()
    }

    fn st(n1: u32, n2: u32) -> QuasiParticleState {
        QuasiParticleState::new(n1, n2)
    }

    #[test]
    fn vacuum_lowering_channels_vanish() {
        let g = GammaPair::new(1.3, 0.8).unwrap();
        let terms = second_order_terms(st(0, 0), g, cfg(2.0), None).unwrap();
        for t in &terms {
            let (d1, d2) = t.channel.delta();
            if d1 < 0 || d2 < 0 {
                assert_eq!(t.contribution, 0.0, "{}", t.channel);
                assert!(t.denominator.is_none());
            }
        }
    }

    #[test]
    fn splitting_values() {
        let g = GammaPair::new(1.1, 2.3).unwrap();
        let c = PerturbationCoefficients::new(g, cfg(1.0)).c;
        assert!((degenerate_correction(st(0, 2), g, cfg(1.0)).unwrap() - 2.0 * c).abs() < 1e-15);
        assert!((degenerate_correction(st(1, 3), g, cfg(1.0)).unwrap() - 6.0 * c).abs() < 1e-14);
        assert!(matches!(
            degenerate_correction(st(3, 1), g, cfg(1.0)),
            Err(Error::NoDegeneratePartner(_))
        ));
    }

    #[test]
    fn pair_matrix_eigenvalues() {
        let g = GammaPair::new(1.7, 1.7).unwrap();
        for s in [st(0, 2), st(1, 3), st(2, 4), st(0, 5)] {
            let m = pair_splitting_matrix(s, g, cfg(3.0)).unwrap();
            // symmetric 2×2 with zero diagonal: eigenvalues ±|offdiag|
            let tr = m[0][0] + m[1][1];
            let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            let disc = (tr * tr / 4.0 - det).sqrt();
            let top = tr / 2.0 + disc;
            let bottom = tr / 2.0 - disc;
            let e1 = degenerate_correction(s, g, cfg(3.0)).unwrap();
            assert!((top - e1).abs() < 1e-12 * e1);
            assert!((bottom + e1).abs() < 1e-12 * e1);
            assert_eq!(m[0][1], m[1][0]);
        }
    }

    #[test]
    fn exchange_partner_detected_at_asymmetric_gamma() {
        let opts = MinimizeOptions::default();
        let (g, _) = gamma_minimize(st(0, 2), cfg(0.5), &opts).unwrap();
        assert!((g.gamma1() - g.gamma2()).abs() > 0.1);
        let p = degenerate_partner(st(0, 2), g, cfg(0.5)).unwrap();
        assert_eq!(p.partner, st(2, 0));
        assert!(p.by_exchange);
        assert!(degenerate_partner(st(1, 2), g, cfg(0.5)).is_none());
        assert!(matches!(
            second_order_energy(st(0, 2), cfg(0.5), &opts),
            Err(Error::Degenerate { .. })
        ));
    }

    #[test]
    fn symmetric_gamma_makes_exchange_denominator_vanish() {
        let g = GammaPair::symmetric(1.9).unwrap();
        for s in [st(0, 2), st(1, 3), st(3, 5)] {
            let d = transition_energy(s, g, cfg(2.0), Channel::new(2, -2).unwrap());
            assert!(d.abs() < DEGENERACY_THRESHOLD, "{s}: {d}");
            let p = degenerate_partner(s, g, cfg(2.0)).unwrap();
            assert!(p.by_exchange);
            assert!(matches!(
                second_order_terms(s, g, cfg(2.0), None),
                Err(Error::Degenerate { .. })
            ));
        }
    }

    #[test]
    fn mirrored_pair_matches() {
        let opts = EstimateOptions::default();
        for l in [0.5, 8.0] {
            let a = estimate(st(0, 2), PerturbativeOrder::Second, cfg(l), &opts).unwrap();
            let b = estimate(st(2, 0), PerturbativeOrder::Second, cfg(l), &opts).unwrap();
            assert_eq!(a.order, Order::SecondOrderDegenerate);
            assert_eq!(b.order, Order::SecondOrderDegenerate);
            assert!((a.value - b.value).abs() < 1e-9);
        }
    }

    #[test]
    fn reject_handling() {
        let opts = EstimateOptions {
            degenerate: DegenerateHandling::Reject,
            ..Default::default()
        };
        assert!(estimate(st(1, 3), PerturbativeOrder::Second, cfg(1.0), &opts).is_err());
        assert!(estimate(st(1, 2), PerturbativeOrder::Second, cfg(1.0), &opts).is_ok());
    }

    #[test]
    fn published_values() {
        let opts = EstimateOptions::default();
        let e = second_order_energy(st(0, 0), cfg(0.5), &opts.minimize).unwrap();
        assert!((e.value - 0.899293).abs() / 0.899293 < 1e-5);
        let e = estimate(st(1, 3), PerturbativeOrder::Second, cfg(1.0), &opts).unwrap();
        assert!((e.value - 8.40525).abs() / 8.40525 < 1e-5);
        let e = estimate(st(0, 2), PerturbativeOrder::Second, cfg(2.0), &opts).unwrap();
        assert!((e.value - 5.60798).abs() / 5.60798 < 1e-5);
    }
}

use apt_core::adaptive::{
    degenerate_correction, estimate, gamma_minimize, leading_energy, pair_splitting_matrix,
    second_order_energy, stationarity_residuals, transition_energy, Channel, DegenerateHandling,
    DegenerateVariant, EstimateOptions, MinimizeOptions, PerturbativeOrder, DEGENERACY_THRESHOLD,
};
use apt_core::{GammaPair, Order, OscillatorConfig, QuasiParticleState};
use proptest::prelude::*;

const LAMBDAS: [f64; 5] = [0.5, 1.0, 2.0, 8.0, 16.0];

fn cfg(l: f64) -> OscillatorConfig {
    OscillatorConfig::new(l).unwrap()
}

fn st(a: u32, b: u32) -> QuasiParticleState {
    QuasiParticleState::new(a, b)
}

#[test]
fn published_leading_order_anchors() {
    let opts = MinimizeOptions::default();
    for (s, l, e) in [
        (st(0, 0), 0.5, 0.90806),
        (st(0, 0), 16.0, 3.82278),
        (st(2, 2), 1.0, 8.19710),
    ] {
        let (g, value) = gamma_minimize(s, cfg(l), &opts).unwrap();
        assert!((value - e).abs() < 5e-6, "{s} λ={l}: {value}");
        assert_eq!(value, leading_energy(s, g, cfg(l)));
        let (r1, r2) = stationarity_residuals(s, g, cfg(l));
        assert!(r1.abs() < 1e-10 && r2.abs() < 1e-10);
    }
}

#[test]
fn minimization_is_swap_symmetric() {
    let opts = MinimizeOptions::default();
    for l in LAMBDAS {
        for n1 in 0..=4 {
            for n2 in 0..=4 {
                let (g, e) = gamma_minimize(st(n1, n2), cfg(l), &opts).unwrap();
                let (gs, es) = gamma_minimize(st(n2, n1), cfg(l), &opts).unwrap();
                assert!((e - es).abs() < 1e-9);
                assert!(
                    (g.gamma1() - gs.gamma2()).abs() < 1e-9
                        && (g.gamma2() - gs.gamma1()).abs() < 1e-9
                );
            }
        }
    }
}

#[test]
fn second_order_lowers_ground_state() {
    let opts = MinimizeOptions::default();
    for l in LAMBDAS {
        let e2 = second_order_energy(st(0, 0), cfg(l), &opts).unwrap();
        let (_, e0) = gamma_minimize(st(0, 0), cfg(l), &opts).unwrap();
        assert!(e2.value < e0, "λ={l}");
        assert_eq!(e2.order, Order::SecondOrder);
    }
}

#[test]
fn degenerate_pairs_at_equal_frequencies() {
    for l in LAMBDAS {
        for g in [0.6, 1.0, 2.5] {
            let gamma = GammaPair::symmetric(g).unwrap();
            for n1 in 0..5 {
                let s = st(n1, n1 + 2);
                let d = transition_energy(s, gamma, cfg(l), Channel::new(2, -2).unwrap());
                let e0 = leading_energy(s, gamma, cfg(l));
                assert!(d.abs() < DEGENERACY_THRESHOLD * e0.abs().max(1.0));
                let m = pair_splitting_matrix(s, gamma, cfg(l)).unwrap();
                let top = (m[0][1] * m[1][0]).sqrt();
                let e1 = degenerate_correction(s, gamma, cfg(l)).unwrap();
                assert!((top - e1).abs() < 1e-12 * e1.max(1.0));
            }
        }
    }
}

#[test]
fn degenerate_variants_bracket_the_pair() {
    let split = EstimateOptions::default();
    let residual = EstimateOptions {
        degenerate: DegenerateHandling::Auto(DegenerateVariant::SplitPlusResidual),
        ..Default::default()
    };
    for l in LAMBDAS {
        for s in [st(0, 2), st(1, 3)] {
            let a = estimate(s, PerturbativeOrder::Second, cfg(l), &split).unwrap();
            let b = estimate(s, PerturbativeOrder::Second, cfg(l), &residual).unwrap();
            assert_eq!(a.order, Order::SecondOrderDegenerate);
            // the residual sum is second order and negative for these states
            assert!(b.value < a.value, "{s} λ={l}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn residuals_match_richardson_differences(
        n1 in 0u32..6, n2 in 0u32..6, g1 in 0.3f64..6.0, g2 in 0.3f64..6.0, l in 0.1f64..20.0,
    ) {
        let s = st(n1, n2);
        let c = cfg(l);
        let e = |a: f64, b: f64| leading_energy(s, GammaPair::new(a, b).unwrap(), c);
        let central = |h: f64| ((e(g1 + h, g2) - e(g1 - h, g2)) / (2.0 * h), (e(g1, g2 + h) - e(g1, g2 - h)) / (2.0 * h));
        let (c1, c2) = central(1e-5);
        let (f1, f2) = central(2e-5);
        let d1 = (4.0 * c1 - f1) / 3.0;
        let d2 = (4.0 * c2 - f2) / 3.0;
        let (r1, r2) = stationarity_residuals(s, GammaPair::new(g1, g2).unwrap(), c);
        let scale = e(g1, g2) / g1.min(g2);
        prop_assert!((r1 - d1).abs() < 1e-6 * r1.abs().max(scale), "{} vs {}", r1, d1);
        prop_assert!((r2 - d2).abs() < 1e-6 * r2.abs().max(scale), "{} vs {}", r2, d2);
    }
}

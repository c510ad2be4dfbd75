use apt_core::lattice::{
    build_lattice_hamiltonian, label_levels, read_eigenvectors, solve_lowest, write_eigenvectors,
    GridConfig, LabelRule, LatticeHamiltonian, Potential, SolverOptions,
};
use apt_core::{Error, OscillatorConfig, QuasiParticleState};

fn st(a: u32, b: u32) -> QuasiParticleState {
    QuasiParticleState::new(a, b)
}

fn residual(h: &LatticeHamiltonian, value: f64, v: &[f64]) -> f64 {
    let mut y = vec![0.0; v.len()];
    h.apply(v, &mut y);
    y.iter()
        .zip(v)
        .map(|(a, b)| (a - value * b).powi(2))
        .sum::<f64>()
        .sqrt()
}

#[test]
fn free_particle_in_a_box() {
    let g = GridConfig::default();
    let h = LatticeHamiltonian::with_potential(g, Potential::Free);
    let pairs = solve_lowest(&h, 6, &SolverOptions::default()).unwrap();
    let n = g.points_per_dim() as f64;
    let a2 = g.spacing().powi(2);
    let mode = |k: f64| (1.0 - (k * std::f64::consts::PI / (n + 1.0)).cos()) / a2;
    let mut exact: Vec<f64> = (1..5)
        .flat_map(|i| (1..5).map(move |j| (i, j)))
        .map(|(i, j)| mode(i as f64) + mode(j as f64))
        .collect();
    exact.sort_by(f64::total_cmp);
    for (p, e) in pairs.iter().zip(&exact) {
        assert!((p.value - e).abs() < 1e-9 * e, "{} vs {e}", p.value);
    }
    // continuum box of width 2L: π²/(2(2L)²) per axis
    let continuum = 2.0 * std::f64::consts::PI.powi(2) / (2.0 * (2.0 * g.half_width()).powi(2));
    assert!((pairs[0].value - continuum).abs() / continuum < 5e-3);
    assert!((mode(1.0) - std::f64::consts::PI.powi(2) / 512.0).abs() / mode(1.0) < 5e-3);
}

#[test]
fn harmonic_levels_with_leading_stencil_error() {
    let g = GridConfig::default();
    let h = LatticeHamiltonian::with_potential(g, Potential::Harmonic { omega: 1.0 });
    let pairs = solve_lowest(&h, 21, &SolverOptions::default()).unwrap();
    // (1 − cos(ap))/a² = p²/2 − a² p⁴/24 + …, and ⟨p⁴⟩ = (6n² + 6n + 3)/4
    let a2 = g.spacing().powi(2);
    let p4 = |n: u32| (6.0 * f64::from(n * n) + 6.0 * f64::from(n) + 3.0) / 4.0;
    let mut predicted: Vec<f64> = (0..8u32)
        .flat_map(|a| (0..8u32).map(move |b| (a, b)))
        .map(|(a, b)| f64::from(a + b + 1) - a2 / 24.0 * (p4(a) + p4(b)))
        .collect();
    predicted.sort_by(f64::total_cmp);
    for (p, e) in pairs.iter().zip(&predicted) {
        assert!((p.value - e).abs() < 1e-5, "{} vs {e}", p.value);
    }
    assert!((pairs[0].value - 1.0).abs() < 1e-4);
}

#[test]
fn residuals_and_orthonormality() {
    let g = GridConfig::new(128, 8.0).unwrap();
    let h = build_lattice_hamiltonian(OscillatorConfig::new(1.0).unwrap(), g);
    let pairs = solve_lowest(&h, 30, &SolverOptions::default()).unwrap();
    assert!(pairs.windows(2).all(|w| w[0].value <= w[1].value));
    for (i, p) in pairs.iter().enumerate() {
        assert!(
            residual(&h, p.value, &p.vector) < 1e-8 * p.value.abs(),
            "level {i}"
        );
        for q in &pairs[..i] {
            let d: f64 = p.vector.iter().zip(&q.vector).map(|(a, b)| a * b).sum();
            assert!(d.abs() < 1e-8);
        }
    }
}

#[test]
fn labels_on_a_coarse_grid() {
    let g = GridConfig::new(128, 8.0).unwrap();
    for l in [0.5, 1.0, 2.0, 8.0, 16.0] {
        let cfg = OscillatorConfig::new(l).unwrap();
        let pairs = solve_lowest(
            &build_lattice_hamiltonian(cfg, g),
            16,
            &SolverOptions::default(),
        )
        .unwrap();
        let states = [
            st(0, 0),
            st(0, 1),
            st(1, 0),
            st(1, 1),
            st(1, 2),
            st(2, 1),
            st(0, 3),
            st(3, 0),
        ];
        let by_overlap = label_levels(&pairs, g, cfg, &states, LabelRule::Overlap).unwrap();
        assert_eq!(by_overlap[0].index, 0);
        assert!(
            by_overlap[0].overlap > 0.9,
            "λ={l}: {}",
            by_overlap[0].overlap
        );
        for pair in by_overlap.chunks(2).skip(1) {
            if pair[0].state == pair[1].state.swapped() {
                assert_ne!(pair[0].index, pair[1].index);
                assert!(
                    (pair[0].energy - pair[1].energy).abs() < 1e-8 * pair[0].energy,
                    "λ={l} {}",
                    pair[0].state
                );
            }
        }
        let by_shell = label_levels(&pairs, g, cfg, &states, LabelRule::ShellOrder).unwrap();
        for (a, b) in by_shell.iter().zip(&by_overlap) {
            // the rules agree on (anti)symmetric doublets up to which member is first
            assert!(
                (a.energy - b.energy).abs() < 1e-8 * a.energy || a.state == st(1, 1),
                "λ={l} {}",
                a.state
            );
        }
        match label_levels(&pairs, g, cfg, &[st(0, 2)], LabelRule::Overlap) {
            Err(Error::LabelAmbiguous { candidates, .. }) => assert!(candidates[0].2 < 0.5),
            other => panic!("expected an ambiguous label, got {other:?}"),
        }
    }
}

#[test]
fn missing_levels_are_reported() {
    let g = GridConfig::new(32, 6.0).unwrap();
    let cfg = OscillatorConfig::new(1.0).unwrap();
    let pairs = solve_lowest(
        &build_lattice_hamiltonian(cfg, g),
        4,
        &SolverOptions::default(),
    )
    .unwrap();
    assert!(matches!(
        label_levels(&pairs, g, cfg, &[st(2, 2)], LabelRule::ShellOrder),
        Err(Error::MissingLevel(_))
    ));
}

#[test]
fn seeded_runs_are_identical_and_dump_roundtrips() {
    let g = GridConfig::new(64, 8.0).unwrap();
    let h = build_lattice_hamiltonian(OscillatorConfig::new(2.0).unwrap(), g);
    let a = solve_lowest(&h, 8, &SolverOptions::default()).unwrap();
    let b = solve_lowest(&h, 8, &SolverOptions::default()).unwrap();
    assert_eq!(a, b);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("vectors.bin");
    write_eigenvectors(std::fs::File::create(&path).unwrap(), g, &a).unwrap();
    let d = read_eigenvectors(std::fs::File::open(&path).unwrap()).unwrap();
    assert_eq!(d.points_per_dim, 64);
    assert_eq!(d.half_width, 8.0);
    assert!(d.vectors.iter().zip(&a).all(|(v, p)| v == &p.vector));
}

#[test]
fn invalid_requests() {
    let g = GridConfig::new(16, 2.0).unwrap();
    let h = build_lattice_hamiltonian(OscillatorConfig::new(1.0).unwrap(), g);
    assert!(matches!(
        solve_lowest(&h, 0, &SolverOptions::default()),
        Err(Error::InvalidEigenCount { .. })
    ));
    assert!(matches!(
        solve_lowest(&h, 257, &SolverOptions::default()),
        Err(Error::InvalidEigenCount { .. })
    ));
}

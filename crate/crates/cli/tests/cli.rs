use std::collections::BTreeMap;
use std::process::Command;

use apt_cli::config::{DegenerateChoice, ReferenceSource};
use apt_cli::{
    deviation_percent, emit_spectrum, read_spectrum, run_table, verify_tables, Column,
    GoldenTables, ReferenceSpectrum, RowOutcome, RunManifest, Session, TableOrder, TABLE_STATES,
};
use apt_core::lattice::GridConfig;
use apt_core::{LabelRule, LabeledLevel, QuasiParticleState};
use proptest::prelude::*;

fn small_manifest() -> RunManifest {
    RunManifest {
        grid: GridConfig::new(64, 8.0).unwrap(),
        levels: 16,
        ..RunManifest::default()
    }
}

/// A reference whose labeled energies are the printed numerical column.
fn printed_reference(golden: &GoldenTables, lambda: f64) -> ReferenceSpectrum {
    let labels: BTreeMap<_, _> = golden
        .table(lambda, TableOrder::Leading)
        .iter()
        .map(|r| {
            (
                r.state(),
                Ok(LabeledLevel {
                    state: r.state(),
                    index: 0,
                    energy: r.numerical,
                    overlap: 1.0,
                }),
            )
        })
        .collect();
    ReferenceSpectrum {
        lambda,
        source: ReferenceSource::Lattice,
        spectrum: vec![],
        labels,
    }
}

fn session_with_printed(golden: &GoldenTables) -> Session {
    let mut s = Session::new(RunManifest::default());
    for l in golden.lambdas() {
        s.insert_reference(l, Ok(printed_reference(golden, l)));
    }
    s
}

#[test]
fn manifest_roundtrips() {
    let m = RunManifest {
        states: vec![QuasiParticleState::new(3, 1)],
        degenerate_variant: DegenerateChoice::SplitPlusResidual,
        label_rule: LabelRule::Overlap,
        seed: 99,
        ..RunManifest::default()
    }
    .stamped();
    let back = RunManifest::from_json(&m.to_json()).unwrap();
    assert_eq!(back, m);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("m.json");
    m.save(&p).unwrap();
    assert_eq!(RunManifest::load(&p).unwrap(), m);
}

#[test]
fn manifest_rejects_bad_values() {
    let mut v: serde_json::Value = serde_json::from_str(&RunManifest::default().to_json()).unwrap();
    v["tolerances"]["second_rel"] = serde_json::json!(0.0);
    assert!(RunManifest::from_json(&v.to_string()).is_err());
    let mut v: serde_json::Value = serde_json::from_str(&RunManifest::default().to_json()).unwrap();
    v["lambda_list"] = serde_json::json!([1.0, -2.0]);
    assert!(RunManifest::from_json(&v.to_string()).is_err());
    let mut v: serde_json::Value = serde_json::from_str(&RunManifest::default().to_json()).unwrap();
    v["grid"]["points_per_dim"] = serde_json::json!(15);
    assert!(RunManifest::from_json(&v.to_string()).is_err());
}

#[test]
fn rows_follow_table_order_and_deviation_formula() {
    let rows = run_table(1.0, TableOrder::Second, &small_manifest());
    assert_eq!(
        rows.iter().map(|r| r.state).collect::<Vec<_>>(),
        TABLE_STATES.to_vec()
    );
    for r in &rows {
        let (e, n, d) = r.energies().expect("computed");
        assert!(d >= 0.0);
        assert!((d - 100.0 * (e - n).abs() / n).abs() < 1e-10);
    }
}

#[test]
fn failed_rows_carry_errors() {
    let m = RunManifest {
        levels: 4,
        ..small_manifest()
    };
    let rows = run_table(2.0, TableOrder::Leading, &m);
    assert!(rows[0].energies().is_some());
    match &rows[7].outcome {
        RowOutcome::Failed { error } => assert!(error.contains("(2, 2)"), "{error}"),
        other => panic!("expected failure, got {other:?}"),
    }
    let m = RunManifest {
        label_rule: LabelRule::Overlap,
        ..small_manifest()
    };
    let rows = run_table(2.0, TableOrder::Leading, &m);
    assert!(
        matches!(rows[2].outcome, RowOutcome::Failed { .. }),
        "(0, 2) is ambiguous by overlap"
    );
    assert!(rows[1].energies().is_some());
}

#[test]
fn spectrum_files_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let mut session = Session::new(small_manifest());
    for name in ["s.csv", "s.json"] {
        let path = dir.path().join(name);
        let rows = emit_spectrum(&mut session, 0.5, &path).unwrap();
        assert_eq!(rows.len(), 8);
        assert_eq!(read_spectrum(&path).unwrap(), rows);
        assert!(rows
            .iter()
            .all(|r| r.e_leading.is_some() && r.e_second.is_some() && r.e_numerical.is_some()));
    }
    let text = std::fs::read_to_string(dir.path().join("s.csv")).unwrap();
    assert!(text.starts_with("state_label,e_leading,e_second,e_numerical\n"));

    let mut empty = Session::new(RunManifest {
        states: vec![],
        ..small_manifest()
    });
    let path = dir.path().join("empty.csv");
    assert!(emit_spectrum(&mut empty, 0.5, &path).unwrap().is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "state_label,e_leading,e_second,e_numerical\n"
    );
    assert!(read_spectrum(&path).unwrap().is_empty());
}

#[test]
fn verify_against_printed_numerics() {
    let golden = GoldenTables::embedded();
    let tol = RunManifest::default().tolerances;
    let mut session = session_with_printed(&golden);
    let report = verify_tables(&mut session, &golden, Some(&[1.0]), &tol);
    assert_eq!(report.tables(), vec![2, 7]);
    assert!(report.all_passed(), "{}", report.render());

    let mut corrupted = golden.clone();
    let row = corrupted
        .rows
        .iter_mut()
        .find(|r| r.table == 7 && r.state() == QuasiParticleState::new(1, 2))
        .unwrap();
    row.energy += 1e-2;
    let report = verify_tables(&mut session, &corrupted, Some(&[1.0]), &tol);
    let failures: Vec<_> = report.failures().collect();
    assert_eq!(failures.len(), 1, "{}", report.render());
    assert_eq!((failures[0].table, failures[0].column), (7, Column::Energy));

    let report = verify_tables(&mut session, &golden, Some(&[0.5]), &tol);
    assert_eq!(report.tables(), vec![1, 6]);
}

#[test]
fn verify_reports_are_reproducible() {
    let golden = GoldenTables::embedded();
    let tol = RunManifest::default().tolerances;
    let a = verify_tables(&mut session_with_printed(&golden), &golden, None, &tol).render();
    let b = verify_tables(&mut session_with_printed(&golden), &golden, None, &tol).render();
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 241);
}

#[test]
fn binary_runs_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |out: &str| {
        let status = Command::new(env!("CARGO_BIN_EXE_apt"))
            .args([
                "table", "--lambda", "0.5,2", "--grid-n", "48", "--format", "csv", "--out",
            ])
            .arg(dir.path().join(out))
            .args(["--save-manifest"])
            .arg(dir.path().join("m.json"))
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(dir.path().join(out)).unwrap()
    };
    let a = run("a.csv");
    let b = run("b.csv");
    assert_eq!(a, b);
    assert_eq!(String::from_utf8(a).unwrap().lines().count(), 1 + 2 * 2 * 8);

    let out = Command::new(env!("CARGO_BIN_EXE_apt"))
        .args(["gamma", "--lambda", "0.5", "--states", "0:0"])
        .output()
        .unwrap();
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("E_min 0.9080554"));

    let spectra = dir.path().join("spectra");
    let status = Command::new(env!("CARGO_BIN_EXE_apt"))
        .args(["spectrum", "--manifest"])
        .arg(dir.path().join("m.json"))
        .args(["--lambda", "2", "--out"])
        .arg(&spectra)
        .status()
        .unwrap();
    assert!(status.success());
    assert_eq!(
        read_spectrum(&spectra.join("spectrum_lambda_2.csv"))
            .unwrap()
            .len(),
        8
    );

    let bad = Command::new(env!("CARGO_BIN_EXE_apt"))
        .args(["gamma", "--states", "0-0"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

proptest! {
    #[test]
    fn deviation_is_nonnegative_and_scaled(e in 0.1f64..100.0, n in 0.1f64..100.0) {
        let d = deviation_percent(e, n);
        prop_assert!(d >= 0.0);
        prop_assert!((d * n / 100.0 - (e - n).abs()).abs() <= 1e-12 * e.max(n));
    }
}

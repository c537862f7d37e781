use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use cellfree_ris::cli::{load_config, Overrides};
use cellfree_ris::experiments::ExperimentKind;
use cellfree_ris::SimConfig;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cellfree-ris"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn flag_beats_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# reference deployment\nN = 30\ntrials = 50\n").unwrap();
    let spec = load_config(
        Some(&cfg),
        &Overrides {
            n_ris: Some(vec![15]),
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(spec.base.n_ris, 15);
    assert_eq!(spec.base.trials, 50);
}

#[test]
fn empty_file_is_all_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("empty.cfg");
    fs::write(&cfg, "").unwrap();
    let spec = load_config(Some(&cfg), &Overrides::default()).unwrap();
    assert_eq!(spec.base, SimConfig::default());
}

#[test]
fn bad_kappa_exits_with_validation_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin(&["--kappa", "1.5", "--trials", "5", "--out", path(dir.path())]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("kappa"));
}

#[test]
fn unreadable_config_exits_with_io_code() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.cfg");
    let out = bin(&["--config", path(&missing), "--out", path(dir.path())]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_key_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "M = 20\n\nwarp = 9\n").unwrap();
    let out = bin(&["--config", path(&cfg), "--out", path(dir.path())]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn seeded_runs_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let out = bin(&[
            "--experiment",
            "rate-region",
            "--seed",
            "7",
            "--trials",
            "40",
            "--out",
            path(dir.path()),
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let first = fs::read(a.path().join("rate-region.csv")).unwrap();
    let second = fs::read(b.path().join("rate-region.csv")).unwrap();
    assert_eq!(first, second);
    let text = String::from_utf8(first).unwrap();
    assert!(text.starts_with("system,kappa,gue_rate_mbps,uav_rate_mbps\n"));
    // 4 kappas x (no-ris + 2 RIS sizes) + the no-UAV baseline
    assert_eq!(text.lines().count(), 1 + 13);
}

#[test]
fn ris_gain_table_has_fifteen_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin(&[
        "--experiment",
        "ris-gain",
        "--heights",
        "16,100,300",
        "--n-ris",
        "20,30,40,50,60",
        "--trials",
        "20",
        "--out",
        path(dir.path()),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = fs::read_to_string(dir.path().join("ris-gain.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("n_ris,uav_height_m,mean_gain_db,samples")
    );
    assert_eq!(lines.count(), 15);

    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["experiment"], "ris-gain");
    assert_eq!(manifest["trials"], 20);
    assert_eq!(manifest["config"]["master_seed"], 1);
}

#[test]
fn cdf_output_is_monotone() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin(&[
        "--experiment",
        "cdf",
        "--trials",
        "30",
        "--tilt-deg",
        "-5",
        "--out",
        path(dir.path()),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = fs::read_to_string(dir.path().join("cdf.csv")).unwrap();
    let rows: Vec<Vec<&str>> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    // 3 scenarios x 2 users x 30 samples
    assert_eq!(rows.len(), 180);
    assert_eq!(rows[0][2], "-5");
    for pair in rows.windows(2) {
        if pair[0][0] == pair[1][0] && pair[0][4] == pair[1][4] {
            let (r0, r1): (f64, f64) = (pair[0][5].parse().unwrap(), pair[1][5].parse().unwrap());
            let (p0, p1): (f64, f64) = (pair[0][6].parse().unwrap(), pair[1][6].parse().unwrap());
            assert!(r1 >= r0 && p1 > p0);
        }
    }
}

#[test]
fn no_ris_drops_ris_systems() {
    let spec = load_config(
        None,
        &Overrides {
            experiment: Some(ExperimentKind::RateRegion),
            no_ris: true,
            ..Default::default()
        },
    )
    .unwrap();
    assert!(spec.n_list.is_empty());
    assert_eq!(spec.base.n_ris, 0);
}

//! End-to-end command tests: output layout, determinism, trends and the
//! machine-readable error path of the binary.

use std::path::Path;
use std::process::Command as Process;

use qwr_cli::commands::{run, Command};
use qwr_cli::config::RunConfig;
use qwr_cli::table::EmitStatus;

fn small_config(out: &Path) -> RunConfig {
    RunConfig {
        out_dir: out.to_path_buf(),
        omega_max_mev: 400.0,
        omega_step_mev: 2.0,
        ..RunConfig::default()
    }
}

#[test]
fn levels_csv_has_decreasing_ground_energy() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    let written = run(Command::Levels, &cfg).unwrap();
    assert_eq!(written.len(), 1);
    assert_eq!(written[0].1, EmitStatus::Ok);
    let body = std::fs::read_to_string(&written[0].0).unwrap();
    let mut e10 = Vec::new();
    for line in body.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        if cells[1] == "1" && cells[2] == "0" {
            e10.push(cells[3].parse::<f64>().unwrap());
        }
    }
    assert_eq!(e10.len(), 2); // radii 3 and 4
    assert!(e10[0] > e10[1], "E10 not decreasing with radius: {e10:?}");
    // metadata sidecar present with hash and switches
    let meta = std::fs::read_to_string(written[0].0.with_extension("meta.toml")).unwrap();
    assert!(meta.contains("config_hash = \"sha256:"));
    assert!(meta.contains("lineshape_mode = \"detuning\""));
}

#[test]
fn identical_configs_give_byte_identical_outputs() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let written_a = run(Command::Dielectric, &small_config(dir_a.path())).unwrap();
    let written_b = run(Command::Dielectric, &small_config(dir_b.path())).unwrap();
    assert_eq!(written_a.len(), written_b.len());
    for ((path_a, _), (path_b, _)) in written_a.iter().zip(&written_b) {
        let a = std::fs::read(path_a).unwrap();
        let b = std::fs::read(path_b).unwrap();
        assert_eq!(a, b, "{} differs between reruns", path_a.display());
    }
}

#[test]
fn dielectric_first_row_hits_calibrated_static_value() {
    let dir = tempfile::tempdir().unwrap();
    let written = run(Command::Dielectric, &small_config(dir.path())).unwrap();
    let wire_r4 = written
        .iter()
        .find(|(p, _)| p.ends_with("dielectric_qwr_r4.csv"))
        .expect("wire r0=4 output");
    let body = std::fs::read_to_string(&wire_r4.0).unwrap();
    let first_row = body.lines().nth(1).unwrap();
    let cells: Vec<&str> = first_row.split(',').collect();
    assert_eq!(cells[0], "0.00000000000"); // grid starts at ħω = 0
    let re_eps: f64 = cells[1].parse().unwrap();
    assert!(
        (re_eps - 10.05).abs() < 0.01,
        "Re eps(0) from CSV: {re_eps}"
    );
}

#[test]
fn all_commands_produce_files() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small_config(dir.path());
    cfg.radii = vec![4.0];
    cfg.sweep_temperatures_k = vec![300.0];
    for command in [
        Command::Levels,
        Command::Binding,
        Command::Absorb,
        Command::Dielectric,
        Command::Compare,
        Command::Sweep,
    ] {
        let written =
            run(command, &cfg).unwrap_or_else(|e| panic!("{} failed: {e}", command.name()));
        assert!(!written.is_empty(), "{} wrote nothing", command.name());
        for (path, status) in written {
            assert!(path.exists());
            assert_eq!(status, EmitStatus::Ok, "{} empty", path.display());
            let body = std::fs::read_to_string(&path).unwrap();
            assert!(!body.contains('\r'), "CRLF in {}", path.display());
        }
    }
}

#[test]
fn auto_volume_norm_uses_sheet_density_and_core_volume() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small_config(dir.path());
    cfg.radii = vec![4.0];
    cfg.volume_norm_qwr = qwr_cli::config::VolumeNorm::Auto;
    cfg.volume_norm_qd = qwr_cli::config::VolumeNorm::Auto;
    let written = run(Command::Compare, &cfg).unwrap();
    let summary = written
        .iter()
        .find(|(p, _)| p.ends_with("compare_summary.csv"))
        .unwrap();
    let body = std::fs::read_to_string(&summary.0).unwrap();
    let mut wire_vol = None;
    let mut dot_vol = None;
    for line in body.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        let vol: f64 = cells[9].parse().unwrap();
        match cells[1] {
            "qwr" => wire_vol = Some(vol),
            "qd" => dot_vol = Some(vol),
            _ => {}
        }
    }
    // wire: 1/|sheet density| at the frozen r0 = 4 configuration
    let wire_vol = wire_vol.unwrap();
    assert!(
        (wire_vol - 1.0 / 5.547688068805e-3).abs() < 1e-3,
        "auto wire volume {wire_vol}"
    );
    // dot: the core volume (4/3)·π·r0³
    let dot_vol = dot_vol.unwrap();
    let core = 4.0 / 3.0 * std::f64::consts::PI * 64.0;
    assert!((dot_vol - core).abs() < 1e-9, "auto dot volume {dot_vol}");
}

#[test]
fn sweep_rows_follow_config_order() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small_config(dir.path());
    cfg.radii = vec![4.0, 3.0]; // deliberately unsorted
    cfg.sweep_temperatures_k = vec![300.0, 77.0];
    let written = run(Command::Sweep, &cfg).unwrap();
    let body = std::fs::read_to_string(&written[0].0).unwrap();
    let keys: Vec<(f64, f64)> = body
        .lines()
        .skip(1)
        .map(|line| {
            let cells: Vec<&str> = line.split(',').collect();
            (cells[0].parse().unwrap(), cells[1].parse().unwrap())
        })
        .collect();
    assert_eq!(
        keys,
        vec![(4.0, 300.0), (4.0, 77.0), (3.0, 300.0), (3.0, 77.0)],
        "rows must follow the configured job order"
    );
}

#[test]
fn unknown_material_is_a_physics_error() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small_config(dir.path());
    cfg.well = "XxN".into();
    let err = run(Command::Levels, &cfg).unwrap_err();
    let json = err.json();
    assert!(json.contains("\"kind\":\"physics\""), "{json}");
    assert!(json.contains("XxN"), "{json}");
}

#[test]
fn binary_reports_json_error_and_nonzero_exit() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "schema_version = 1\n[geometry]\nradius = 4\n").unwrap();
    let output = Process::new(env!("CARGO_BIN_EXE_qwr"))
        .args(["levels", "--config"])
        .arg(&bad)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(!output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("\"kind\":\"config\""), "stderr: {stderr}");
}

#[test]
fn binary_happy_path_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let output = Process::new(env!("CARGO_BIN_EXE_qwr"))
        .args(["levels", "--out"])
        .arg(dir.path())
        .args(["--matching", "plain", "--gamma-mev", "12"])
        .env("QWR_THREADS", "1")
        .output()
        .unwrap();
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    assert!(dir.path().join("levels.csv").exists());
    let meta = std::fs::read_to_string(dir.path().join("levels.meta.toml")).unwrap();
    assert!(meta.contains("matching = \"plain\""));
    assert!(meta.contains("gamma_mev = \"12\""));
}

#[test]
fn plain_matching_shifts_levels() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small_config(dir.path());
    cfg.radii = vec![4.0];
    let bdd = run(Command::Levels, &cfg).unwrap();
    let body_bdd = std::fs::read_to_string(&bdd[0].0).unwrap();
    cfg.matching = qwr_core::subband::MatchingCondition::PlainDerivative;
    cfg.out_dir = dir.path().join("plain");
    let plain = run(Command::Levels, &cfg).unwrap();
    let body_plain = std::fs::read_to_string(&plain[0].0).unwrap();
    assert_ne!(body_bdd, body_plain);
}

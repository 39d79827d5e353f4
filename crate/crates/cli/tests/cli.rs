// Copyright 2026 The spinq Developers
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const SMALL: &str = "num_spins: 3\ntotal_time: 1\nnum_steps: 4\ncoupling_x: 1\ncoupling_y: 1\nfield_z: 0.5\ninitial_state: flip-first\nobservable: excitation-displacement\n";

fn spinq(args: &[&str], env: Option<(&str, &Path)>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_spinq"));
    cmd.args(args).env_remove("SPINQ_OUTPUT_DIR");
    if let Some((k, v)) = env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn input(dir: &Path, text: &str) -> PathBuf {
    let path = dir.join("input.txt");
    fs::write(&path, text).unwrap();
    path
}

fn tutorial(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../inputs").join(name)
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn real_time_run_writes_series() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = spinq(&["run", input(dir.path(), SMALL).to_str().unwrap(), "--out", out.to_str().unwrap()], None);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(out.join("series.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 5);
    assert!(csv.starts_with("axis,observable,sigma\n"));
    assert!(fs::read_to_string(out.join("series.svg")).unwrap().contains("<svg "));
    let manifest = fs::read_to_string(out.join("manifest.json")).unwrap();
    assert!(manifest.contains("\"mode\": \"real-time\""));
}

#[test]
fn export_and_ground_truth_flags() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let path = input(dir.path(), SMALL);
    let o = spinq(
        &["run", path.to_str().unwrap(), "--out", out.to_str().unwrap(), "--export", "--ground-truth"],
        None,
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(out.join("series.csv")).unwrap();
    assert!(csv.starts_with("axis,observable,sigma,ground_truth\n"));
    for k in 0..=4 {
        let qasm = fs::read_to_string(out.join(format!("circuits/step_{k:04}.qasm"))).unwrap();
        assert!(qasm.starts_with("OPENQASM 2.0;"));
        assert!(qasm.contains("measure"));
    }
    let step0 = fs::read_to_string(out.join("circuits/step_0000.qasm")).unwrap();
    // The flipped spin is prepared with a native RX(π).
    assert!(step0.contains("rx(3.1415926535897931e0) q[0];"), "{step0}");
}

#[test]
fn shots_and_seed_flags_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let path = input(dir.path(), SMALL);
    let mut csvs = Vec::new();
    for run in 0..2 {
        let out = dir.path().join(format!("out{run}"));
        let o = spinq(
            &["run", path.to_str().unwrap(), "--out", out.to_str().unwrap(), "--shots", "300", "--seed", "4"],
            None,
        );
        assert!(o.status.success(), "{}", stderr(&o));
        csvs.push(fs::read_to_string(out.join("series.csv")).unwrap());
    }
    assert_eq!(csvs[0], csvs[1]);
    // Every row carries a standard error.
    assert!(csvs[0].lines().skip(1).all(|l| !l.ends_with(',')));
}

#[test]
fn env_var_sets_default_output_dir() {
    let dir = tempfile::tempdir().unwrap();
    let env_out = dir.path().join("from-env");
    let o = spinq(&["run", input(dir.path(), SMALL).to_str().unwrap()], Some(("SPINQ_OUTPUT_DIR", &env_out)));
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(env_out.join("series.csv").exists());

    // `--out` wins over the environment.
    let flag_out = dir.path().join("from-flag");
    let o = spinq(
        &["run", input(dir.path(), SMALL).to_str().unwrap(), "--out", flag_out.to_str().unwrap()],
        Some(("SPINQ_OUTPUT_DIR", &env_out.join("unused"))),
    );
    assert!(o.status.success());
    assert!(flag_out.join("series.csv").exists());
    assert!(!env_out.join("unused").exists());
}

#[test]
fn config_error_exit_code_names_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = input(dir.path(), &format!("{SMALL}colour: blue\n"));
    let o = spinq(&["run", path.to_str().unwrap(), "--out", dir.path().join("o").to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("input.txt") && err.contains("line 9") && err.contains("colour"), "{err}");
}

#[test]
fn constant_depth_is_unsupported() {
    let dir = tempfile::tempdir().unwrap();
    let path = input(dir.path(), &format!("{SMALL}constant_depth: True\n"));
    let o = spinq(&["run", path.to_str().unwrap(), "--out", dir.path().join("o").to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("constant_depth"));
}

#[test]
fn oversized_ground_truth_is_too_large() {
    let dir = tempfile::tempdir().unwrap();
    let text = SMALL.replace("num_spins: 3", "num_spins: 11").replace("num_steps: 4", "num_steps: 1");
    let path = input(dir.path(), &text);
    let o = spinq(
        &["run", path.to_str().unwrap(), "--out", dir.path().join("o").to_str().unwrap(), "--ground-truth"],
        None,
    );
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
}

#[test]
fn unreadable_input_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = spinq(&["run", dir.path().join("missing.txt").to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn export_only_writes_circuits_without_series() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let path = input(dir.path(), &format!("{SMALL}QCQS: export-only\n"));
    let o = spinq(&["run", path.to_str().unwrap(), "--out", out.to_str().unwrap()], None);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(!out.join("series.csv").exists());
    assert!(out.join("circuits/step_0004.qasm").exists());
    assert!(out.join("manifest.json").exists());
}

#[test]
fn qite_tutorial_converges() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = spinq(&["run", tutorial("qite_tfim.txt").to_str().unwrap(), "--out", out.to_str().unwrap()], None);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(out.join("series.csv")).unwrap();
    let energies: Vec<f64> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(energies.len(), 26);
    let e0 = -3.493_959_207_434_935;
    assert!(((energies[8] - e0) / e0).abs() < 0.02, "{}", energies[8]);
}

#[test]
fn localization_tutorial_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = spinq(&["run", tutorial("localization.txt").to_str().unwrap(), "--out", out.to_str().unwrap()], None);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(out.join("series.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 121);
}

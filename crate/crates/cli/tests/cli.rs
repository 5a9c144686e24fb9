//! End-to-end tests of the cpt-shift binary: presets, CSV shape,
//! determinism, and exit codes.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cpt-shift"))
}

fn read_data_rows(path: &Path) -> Vec<Vec<String>> {
    let text = std::fs::read_to_string(path).unwrap();
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(2) // header + units rows
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn fig2_spectrum_brackets_the_reference_shift() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig2.csv");
    let status = bin()
        .args(["spectrum", "--preset", "fig2", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());

    let rows = read_data_rows(&out);
    assert_eq!(rows.len(), 201);
    // Im rho12 (column 2) must change sign inside a bracket that contains
    // the reference shift 1.584e-5.
    let mut crossing = None;
    for pair in rows.windows(2) {
        let d0: f64 = pair[0][0].parse().unwrap();
        let d1: f64 = pair[1][0].parse().unwrap();
        let im0: f64 = pair[0][2].parse().unwrap();
        let im1: f64 = pair[1][2].parse().unwrap();
        if im0.signum() != im1.signum() {
            crossing = Some((d0, d1));
        }
    }
    let (lo, hi) = crossing.expect("no dispersive zero crossing found");
    let reference = 1.584e-5;
    assert!(
        lo <= reference && reference <= hi,
        "crossing ({lo}, {hi}) does not bracket {reference}"
    );
}

#[test]
fn identical_config_gives_byte_identical_csv() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.cfg");
    std::fs::write(
        &config,
        "omega_34 = 10\nrabi_1 = 9.486832980505138e-3\nrabi_2 = 3.1622776601683795e-3\n\
         p_1 = 1\np_2 = -1\ndelta_min = -2e-4\ndelta_max = 2e-4\ndelta_steps = 41\n",
    )
    .unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for out in [&a, &b] {
        let status = bin()
            .args(["spectrum", "--config"])
            .arg(&config)
            .arg("--out")
            .arg(out)
            .status()
            .unwrap();
        assert!(status.success());
    }
    assert_eq!(
        std::fs::read(&a).unwrap(),
        std::fs::read(&b).unwrap(),
        "CSV output is not deterministic"
    );
}

#[test]
fn rational_path_matches_exact_path_in_the_weak_regime() {
    let dir = tempfile::tempdir().unwrap();
    let exact = dir.path().join("exact.csv");
    let rational = dir.path().join("rational.csv");
    for (path, out) in [("exact", &exact), ("rational", &rational)] {
        let status = bin()
            .args(["spectrum", "--preset", "fig2", "--path", path, "--out"])
            .arg(out)
            .status()
            .unwrap();
        assert!(status.success());
    }
    let re = read_data_rows(&exact);
    let rr = read_data_rows(&rational);
    for (a, b) in re.iter().zip(rr.iter()) {
        let chi_e: f64 = a[3].parse().unwrap();
        let chi_r: f64 = b[3].parse().unwrap();
        assert!(
            (chi_e - chi_r).abs() <= 2e-3 * chi_e.abs().max(1e-4),
            "chi1_im mismatch: {chi_e} vs {chi_r}"
        );
    }
}

#[test]
fn shift_vs_x_null_preset_gives_zero_column() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig7a.csv");
    let status = bin()
        .args(["shift-vs-x", "--preset", "fig7a", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    for row in read_data_rows(&out) {
        let ratio: f64 = row[0].parse().unwrap();
        let x: f64 = row[1].parse().unwrap();
        let s: f64 = row[2].parse().unwrap();
        if ratio == 1.0 {
            assert!(s.abs() <= 1e-6 * x, "S({x}) = {s} at unit ratio");
        }
    }
}

#[test]
fn bad_config_exits_with_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.cfg");
    std::fs::write(&config, "omega_34 = ten\n").unwrap();
    let status = bin()
        .args(["spectrum", "--config"])
        .arg(&config)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));

    // Missing both --config and --preset is also a config error.
    let status = bin().arg("spectrum").status().unwrap();
    assert_eq!(status.code(), Some(2));

    // Unknown preset.
    let status = bin()
        .args(["spectrum", "--preset", "fig99"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn rational_path_rejects_ground_decoherence_as_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.cfg");
    std::fs::write(
        &config,
        "omega_34 = 1\nrabi_1 = 0.01\nrabi_2 = 0.01\np_1 = 1\np_2 = -1\ngamma_12 = 1e-6\n",
    )
    .unwrap();
    let status = bin()
        .args(["spectrum", "--config"])
        .arg(&config)
        .args(["--path", "rational"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn validate_list_enumerates_without_running() {
    let output = bin().args(["validate", "--list"]).output().unwrap();
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    assert_eq!(text.lines().count(), 10);
    assert!(text.contains("criterion 1"));
    assert!(text.contains("criterion 10"));
}

#[test]
fn threads_env_var_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("one_thread.csv");
    let status = bin()
        .env("CPT_SHIFT_THREADS", "1")
        .args(["spectrum", "--preset", "fig2", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    assert_eq!(read_data_rows(&out).len(), 201);
}

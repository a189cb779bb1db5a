//! End-to-end tests of the spindimer binary: exit codes, file formats,
//! and output determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use spindimer::families::{full_hamiltonian, CouplingSet};
use spindimer::sweep::parse_matrix;
use spindimer::C64;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spindimer"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write(path: &Path, text: &str) {
    fs::write(path, text).unwrap();
}

const FIG1_CONFIG: &str = "Jx = -1\nJy = -1.5\nJz = -2\nDz = 1.8\nGz = 0\nT = 1\n";

#[test]
fn hamiltonian_builds_the_preset_x_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("fig1.cfg");
    write(&cfg, FIG1_CONFIG);
    let out_path = dir.path().join("h.mat");

    let out = run(&[
        "hamiltonian",
        "--config",
        cfg.to_str().unwrap(),
        "--family",
        "zz",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("bloch coefficients:"));
    assert!(!text.contains("dropped"), "no residual for X-family couplings");

    // Entry (|01>, |10>) is J_x + J_y + 2i D_z = -2.5 + 3.6i.
    let m = parse_matrix(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert!((m[(1, 2)] - C64::new(-2.5, 3.6)).norm() < 1e-12);
    assert!((m[(0, 3)] - C64::new(0.5, 0.0)).norm() < 1e-12); // J_x - J_y - 2iΓ_z

    // And it matches the library's full Hamiltonian.
    let couplings = CouplingSet {
        j: [-1.0, -1.5, -2.0],
        d: [0.0, 0.0, 1.8],
        ..CouplingSet::zero()
    };
    assert!((m - full_hamiltonian(&couplings)).norm_fro() < 1e-12);
}

#[test]
fn hamiltonian_full_fifteen_coupling_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("full.cfg");
    write(
        &cfg,
        "B1x = 0.1\nB1y = -0.2\nB1z = 0.3\nB2x = 0.4\nB2y = -0.5\nB2z = 0.6\n\
         Jx = -1.1\nJy = 1.2\nJz = -1.3\nDx = 0.7\nDy = -0.8\nDz = 0.9\n\
         Gx = -0.15\nGy = 0.25\nGz = -0.35\n",
    );
    let out_path = dir.path().join("full.mat");
    let out = run(&[
        "hamiltonian",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));

    let m = parse_matrix(&fs::read_to_string(&out_path).unwrap()).unwrap();
    let expected = full_hamiltonian(&CouplingSet {
        b1: [0.1, -0.2, 0.3],
        b2: [0.4, -0.5, 0.6],
        j: [-1.1, 1.2, -1.3],
        d: [0.7, -0.8, 0.9],
        gamma: [-0.15, 0.25, -0.35],
    });
    assert!((m - expected).norm_fro() < 1e-14);
}

#[test]
fn hamiltonian_all_zero_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("zero.cfg");
    write(&cfg, "T = 1\n");
    let out = run(&["hamiltonian", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("(all zero)"));
}

#[test]
fn unknown_config_key_names_the_key_and_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    write(&cfg, "Qx = 1\n");
    let out = run(&["hamiltonian", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("Qx"));
}

#[test]
fn classify_identity_finds_all_families() {
    let dir = tempfile::tempdir().unwrap();
    let mat = dir.path().join("id.mat");
    write(&mat, "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n");
    let out = run(&["classify", mat.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    let families_line = text.lines().next().unwrap();
    assert_eq!(families_line.split_whitespace().count(), 16); // "families:" + 15
}

#[test]
fn classify_cs_matrix_reports_hadamard_reduction() {
    let dir = tempfile::tempdir().unwrap();
    let mat = dir.path().join("cs.mat");
    // Hermitian centrosymmetric matrix with generic entries.
    write(
        &mat,
        "0.9 0.2,0.1 0.3,-0.4 0.7\n\
         0.2,-0.1 -0.9 0.55 0.3,0.4\n\
         0.3,0.4 0.55 -0.9 0.2,-0.1\n\
         0.7 0.3,-0.4 0.2,0.1 0.9\n",
    );
    let out = run(&["classify", mat.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("families: xx"), "{text}");
    assert!(text.contains("reduction xx: H⊗H -> zz"), "{text}");
}

#[test]
fn classify_generic_hermitian_finds_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let mat = dir.path().join("generic.mat");
    write(
        &mat,
        "1.0 0.1,0.2 0.3,0.4 0.5,0.6\n\
         0.1,-0.2 2.0 0.7,0.8 0.9,1.0\n\
         0.3,-0.4 0.7,-0.8 3.0 1.1,1.2\n\
         0.5,-0.6 0.9,-1.0 1.1,-1.2 4.0\n",
    );
    let out = run(&["classify", mat.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("families: (none)"));
}

#[test]
fn classify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let mat = dir.path().join("broken.mat");
    write(&mat, "1 2 3\n");
    let out = run(&["classify", mat.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "malformed file");

    let mat = dir.path().join("nonherm.mat");
    write(&mat, "1 1 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n");
    let out = run(&["classify", mat.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3), "non-Hermitian data");

    let out = run(&["classify", dir.path().join("missing.mat").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "unreadable file");
}

#[test]
fn spectrum_matches_diagonal_example() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("diag.cfg");
    write(&cfg, "B1z = 1\nB2z = 0.5\nJz = 2\n");
    let out = run(&["spectrum", "--config", cfg.to_str().unwrap(), "--family", "zz"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("-2.5"), "{text}");
    assert!(text.contains("3.5"), "{text}");
    assert!(text.contains("method: family zz blocks"));
}

#[test]
fn correlations_zero_hamiltonian_is_all_zero() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("zero.cfg");
    write(&cfg, "T = 2\n");
    let out = run(&["correlations", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("concurrence       = 0.00000000000e0"), "{text}");
    assert!(text.contains("ppt_separable     = true"));
}

#[test]
fn correlations_rejects_nonpositive_temperature() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("fig1.cfg");
    write(&cfg, FIG1_CONFIG);
    let out = run(&[
        "correlations",
        "--config",
        cfg.to_str().unwrap(),
        "--temp",
        "-1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn correlations_singlet_dominated_ground_state() {
    // Isotropic J = (1, 1, 1) at low temperature: the singlet dominates
    // and the concurrence approaches 1.
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("iso.cfg");
    write(&cfg, "Jx = 1\nJy = 1\nJz = 1\nT = 0.05\n");
    let out = run(&["correlations", "--config", cfg.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let c = v["concurrence"].as_f64().unwrap();
    assert!(c > 0.99, "concurrence {c}");
    assert!(!v["ppt_separable"].as_bool().unwrap());
}

#[test]
fn correlations_round_trips_through_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("fig1.cfg");
    write(&cfg, FIG1_CONFIG);
    let mat = dir.path().join("h.mat");

    let out = run(&[
        "hamiltonian",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        mat.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let from_config = run(&["correlations", "--config", cfg.to_str().unwrap()]);
    let from_matrix = run(&[
        "correlations",
        mat.to_str().unwrap(),
        "--temp",
        "1",
    ]);
    assert!(from_config.status.success());
    assert!(from_matrix.status.success());
    assert_eq!(stdout(&from_config), stdout(&from_matrix));
}

#[test]
fn sweep_emits_the_contracted_csv_columns_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("fig1.cfg");
    write(&cfg, FIG1_CONFIG);

    let args = [
        "sweep", "--var", "T", "--from", "0.1", "--to", "1.0", "--steps", "5", "--config",
        cfg.to_str().unwrap(),
    ];
    let first = run(&args);
    assert!(first.status.success(), "{}", stderr(&first));
    let text = stdout(&first);
    assert!(
        text.starts_with("var,C,Q1,Q2,D1,D2,branchQ1,branchQ2,branchD1,branchD2,ppt\n"),
        "{text}"
    );
    assert_eq!(text.lines().count(), 6);

    let second = run(&args);
    assert_eq!(stdout(&first), stdout(&second), "byte-identical reruns");

    // Values ascend in the swept variable, measures are sane.
    let mut last = f64::NEG_INFINITY;
    for line in text.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 11);
        let var: f64 = fields[0].parse().unwrap();
        assert!(var > last);
        last = var;
        for field in &fields[1..6] {
            let v: f64 = field.parse().unwrap();
            assert!(v >= 0.0);
        }
        let c: f64 = fields[1].parse().unwrap();
        assert!(c <= 1.0);
    }
}

#[test]
fn sweep_json_parses() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("fig1.cfg");
    write(&cfg, FIG1_CONFIG);
    let out = run(&[
        "sweep", "--var", "Dz", "--from", "0", "--to", "2", "--steps", "3", "--config",
        cfg.to_str().unwrap(), "--format", "json",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert!(v[0]["branchQ2"].is_string());
}

#[test]
fn sweep_rejects_bad_grid_and_unknown_variable() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("fig1.cfg");
    write(&cfg, FIG1_CONFIG);
    let out = run(&[
        "sweep", "--var", "T", "--from", "2", "--to", "1", "--steps", "5", "--config",
        cfg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&[
        "sweep", "--var", "Qz", "--from", "0", "--to", "1", "--steps", "5", "--config",
        cfg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fig1_emits_three_well_formed_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["fig1", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));

    let mut names: Vec<String> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names, vec!["fig1_Gz0.3.csv", "fig1_Gz0.5.csv", "fig1_Gz0.csv"]);

    for name in &names {
        let text = fs::read_to_string(dir.path().join(name)).unwrap();
        let data_rows = text.lines().filter(|l| !l.starts_with('#')).count();
        assert_eq!(data_rows, 301, "{name}: header + 300 points");
        // High-temperature tail decays toward zero discord.
        let last = text.lines().last().unwrap();
        let q2: f64 = last.split(',').nth(2).unwrap().parse().unwrap();
        assert!(q2 < 0.25, "{name}: tail discord {q2}");
    }
}

use std::path::Path;
use std::process::{Command, Output};

use polar_sim::{SimConfig, SimResult};

fn polar_sim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polar-sim"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_writes_a_loadable_frozen_set() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("frozen.txt");
    stdout(&polar_sim(&[
        "construct",
        "--n",
        "3",
        "--k",
        "5",
        "--out",
        path(&file),
    ]));
    let text = std::fs::read_to_string(&file).unwrap();
    assert_eq!(
        polar_core::load_frozen_set(&text, 3)
            .unwrap()
            .frozen_positions(),
        vec![0, 1, 2]
    );
}

#[test]
fn timesteps_table_and_tree() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("f.txt");
    std::fs::write(&file, "0\n1\n2\n").unwrap();
    let csv = stdout(&polar_sim(&[
        "timesteps",
        "--n",
        "3",
        "--frozen-file",
        path(&file),
        "--list-sizes",
        "2,4,5",
    ]));
    assert_eq!(
        csv,
        "L,sc,scl,sscl,fast_sscl,fast_vs_sscl_pct,fast_vs_scl_pct\n\
         2,14,19,8,5,37.50,73.68\n4,14,19,8,7,12.50,63.16\n5,14,19,8,8,0.00,57.89\n"
    );
    let tree = stdout(&polar_sim(&[
        "timesteps",
        "--n",
        "3",
        "--frozen-file",
        path(&file),
        "--tree",
    ]));
    assert_eq!(tree, "Node[0..8)\n  Rep[0..4)\n  Rate1[4..8)\n");
    let json = stdout(&polar_sim(&[
        "timesteps",
        "--n",
        "10",
        "--k",
        "512",
        "--list-sizes",
        "2",
        "--format",
        "json",
    ]));
    let rows: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(rows[0]["scl"], 2558);
}

#[test]
fn decode_llr_file() {
    let dir = tempfile::tempdir().unwrap();
    let frozen = dir.path().join("f.txt");
    let llr = dir.path().join("llr.txt");
    std::fs::write(&frozen, "0\n1\n2\n").unwrap();
    std::fs::write(&llr, "0.5\n-1.2\n2.0\n0.3\n1.0\n0.8\n-0.4\n1.5\n").unwrap();
    for algo in ["scl", "sscl", "fast-sscl"] {
        let out = stdout(&polar_sim(&[
            "decode",
            "--frozen-file",
            path(&frozen),
            "--llr-file",
            path(&llr),
            "--algo",
            algo,
            "--list-size",
            "2",
        ]));
        assert!(out.contains("u_hat: 00011010"), "{out}");
    }
    let sc = stdout(&polar_sim(&[
        "decode",
        "--frozen-file",
        path(&frozen),
        "--llr-file",
        path(&llr),
        "--algo",
        "sc",
    ]));
    assert!(sc.contains("u_hat: 00011010") && sc.contains("time_steps: 14"));
}

#[test]
fn simulate_from_flags_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "simulate",
        "--n",
        "6",
        "--k",
        "32",
        "--algo",
        "fast-sscl",
        "--list-size",
        "4",
        "--ebn0",
        "1.0:1.0:3.0",
        "--frames",
        "300",
        "--seed",
        "9",
        "--format",
        "json",
    ];
    let first: SimResult = serde_json::from_str(&stdout(&polar_sim(&args))).unwrap();
    assert_eq!(first.rows.len(), 3);
    let again = stdout(&polar_sim(&args));
    assert_eq!(
        serde_json::to_string(&first).unwrap(),
        serde_json::to_string(&serde_json::from_str::<SimResult>(&again).unwrap()).unwrap()
    );

    let config = dir.path().join("sim.json");
    let report = dir.path().join("out.csv");
    std::fs::write(
        &config,
        r#"{"code": {"n": 6, "k": 32}, "algo": "fast-sscl", "list_size": 4, "ebn0_db": [1.0, 2.0, 3.0],
            "max_frames": 300, "seed": 9, "workers": 1}"#,
    )
    .unwrap();
    assert!(SimConfig::load(&config).is_ok());
    stdout(&polar_sim(&[
        "simulate",
        "--config",
        path(&config),
        "--out",
        path(&report),
    ]));
    let csv = std::fs::read_to_string(&report).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "decoder,L,pm_mode,ebn0_db,frames,bit_errors,frame_errors,ber,fer,time_steps"
    );
    assert_eq!(lines.len(), 4);
    for (line, row) in lines[1..].iter().zip(&first.rows) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[4].parse::<u64>().unwrap(), row.frames);
        assert_eq!(fields[6].parse::<u64>().unwrap(), row.frame_errors);
    }
}

#[test]
fn equivalence_reports_json() {
    let out = stdout(&polar_sim(&[
        "equivalence",
        "--n",
        "6",
        "--k",
        "32",
        "--list-size",
        "4",
        "--ebn0",
        "2",
        "--frames",
        "200",
    ]));
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["frames"], 200);
    assert_eq!(report["pairs"].as_array().unwrap().len(), 3);
}

#[test]
fn errors_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "0\n9\n").unwrap();
    for args in [
        vec!["timesteps", "--n", "3", "--frozen-file", path(&bad)],
        vec!["construct", "--n", "3", "--k", "9"],
        vec!["simulate", "--n", "6", "--k", "32", "--frames", "0"],
        vec!["simulate", "--config", "/nonexistent/sim.json"],
        vec!["simulate", "--n", "6", "--k", "32", "--algo", "bogus"],
        vec!["decode", "--llr-file", "/nonexistent/llr.txt", "--k", "4"],
    ] {
        let out = polar_sim(&args);
        assert!(!out.status.success(), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn qubench(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qubench"))
        .args(args)
        .current_dir(cwd)
        .env_remove("SOURCE_DATE_EPOCH")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const CONFIG: &str = r#"{
  "benchmarks": [
    {"kind": "bell"},
    {"kind": "ghz", "n": 6},
    {"kind": "ghz", "n": 10},
    {"kind": "qft", "n": 6},
    {"kind": "grover", "n": 4, "marked": "0110"},
    {"kind": "qaoa", "graph": {"type": "complete_bipartite", "a": 3, "b": 3}}
  ],
  "devices": ["IDEAL"],
  "seed": 7
}"#;

#[test]
fn run_then_tables_and_plots() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("cfg.json"), CONFIG).unwrap();
    let out = qubench(&["run", "--config", "cfg.json", "--out", "res"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let archive = dir.path().join("res/archive.jsonl");
    assert!(archive.exists());

    let ghz = qubench(&["table", "res/archive.jsonl", "--id", "ghz"], dir.path());
    assert_eq!(
        stdout(&ghz),
        "device,n,F_exp,err,F_ideal,shots\nIDEAL,6,1.000,0.000,1.000,100\nIDEAL,10,1.000,0.000,1.000,100\n"
    );

    let qft = stdout(&qubench(&["table", "res/archive.jsonl", "--id", "qft"], dir.path()));
    assert!(qft.starts_with("device,n,F_exp,err,depth,F_ideal\nIDEAL,6,1.000,0.000,"));

    let grover = stdout(&qubench(&["table", "res/archive.jsonl", "--id", "grover"], dir.path()));
    let labels: Vec<&str> = grover.lines().skip(1).map(|l| l.split(',').nth(3).unwrap()).collect();
    assert_eq!(labels, ["k-1", "k", "k+1"]);

    let qaoa = stdout(&qubench(&["table", "res/archive.jsonl", "--id", "qaoa"], dir.path()));
    assert!(qaoa.starts_with("device,graph,approx_ratio,err,feasibility_pct,success,mean_hamming\nIDEAL,K3_3,"));

    let plots = qubench(&["plot-data", "res/archive.jsonl", "--id", "ghz_vs_n", "--out", "plots"], dir.path());
    assert!(plots.status.success());
    assert_eq!(fs::read_to_string(dir.path().join("plots/ghz_vs_n_IDEAL.csv")).unwrap(), "x,y,err\n6,1,0\n10,1,0\n");

    let bars = qubench(&["plot-data", "res/archive.jsonl", "--id", "chsh_bars", "--out", "plots"], dir.path());
    assert!(bars.status.success());
    assert!(dir.path().join("plots/chsh_bars_classical_bound.csv").exists());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.json"), r#"{"benchmarks": [], "devices": ["IDEAL"]}"#).unwrap();
    assert_eq!(qubench(&["run", "--config", "bad.json"], dir.path()).status.code(), Some(2));
    assert_eq!(qubench(&["run", "--config", "missing.json"], dir.path()).status.code(), Some(2));

    // A 12-qubit GHZ state does not fit on a 10-qubit device: execution error.
    fs::write(
        dir.path().join("small.json"),
        r#"{"name": "SMALL", "n_qubits": 10, "coupling": "all_to_all", "native_two_qubit": "CNOT",
            "p1": 0.0, "p2": 0.0, "readout_flip": 0.0}"#,
    )
    .unwrap();
    fs::write(
        dir.path().join("wide.json"),
        r#"{"benchmarks": [{"kind": "ghz", "n": 12}], "devices": ["small.json"]}"#,
    )
    .unwrap();
    let out = qubench(&["run", "--config", "wide.json"], dir.path());
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ghz(n=12) on SMALL"));

    fs::write(dir.path().join("cfg.json"), r#"{"benchmarks": [{"kind": "bell"}], "devices": ["IDEAL"]}"#).unwrap();
    assert!(qubench(&["run", "--config", "cfg.json", "--out", "r"], dir.path()).status.success());
    assert_eq!(qubench(&["table", "r/archive.jsonl", "--id", "qaoa"], dir.path()).status.code(), Some(3));
    assert_eq!(qubench(&["table", "r/archive.jsonl", "--id", "bogus"], dir.path()).status.code(), Some(2));
}

#[test]
fn route_report_csv() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c.txt"), "qubits=4\nH 0\nCNOT 0,3\nCNOT 1,2\n").unwrap();
    let out = qubench(&["route-report", "--circuit", "c.txt", "--devices", "IDEAL,SC_GRID20"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "device,n,depth_before,depth_after,two_qubit_count,added_swaps");
    assert!(lines[1].starts_with("IDEAL,4,2,"));
    assert!(lines[1].ends_with(",0"));
    assert!(lines[2].starts_with("SC_GRID20,4,2,"));
}

#[test]
fn overrides_change_the_run() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("cfg.json"), r#"{"benchmarks": [{"kind": "bell"}], "devices": ["IDEAL"]}"#).unwrap();
    for (out, seed) in [("a", "1"), ("b", "2")] {
        let o = qubench(&["run", "--config", "cfg.json", "--out", out, "--seed", seed, "--shots", "500"], dir.path());
        assert!(o.status.success());
    }
    let a = fs::read_to_string(dir.path().join("a/archive.jsonl")).unwrap();
    let b = fs::read_to_string(dir.path().join("b/archive.jsonl")).unwrap();
    assert_ne!(a, b);
    assert!(a.contains("\"shots\":500"));
}

use serde_json::Value;
use std::path::Path;
use std::process::Command;

fn qet(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qet"))
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .expect("binary runs")
}

fn manifest(dir: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap()
}

fn run_ok(args: &[&str], out: &Path) -> Value {
    let mut all = args.to_vec();
    all.extend(["--out", out.to_str().unwrap()]);
    let o = qet(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    manifest(out)
}

#[test]
fn qip_accepts_at_unit_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let m = run_ok(&["qip", "--h", "1", "--k", "1", "--n-shot", "10000", "--seed", "7"], dir.path());
    assert_eq!(m["summary"]["decision"], "accept");
    let mean = m["summary"]["mean_energy"].as_f64().unwrap();
    let se = m["summary"]["std_error"].as_f64().unwrap();
    assert!((mean + 0.1148).abs() < 4.0 * se, "mean {mean} se {se}");
    assert_eq!(m["config"]["seed"], 7);
}

#[test]
fn identical_config_gives_identical_outputs() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["soundness", "--n-unitaries", "20", "--n-thetas", "30", "--seed", "5"];
    let ma = run_ok(&args, a.path());
    let mb = run_ok(&args, b.path());
    assert_eq!(ma["outputs"], mb["outputs"]);
    let ca = std::fs::read(a.path().join("attacks.csv")).unwrap();
    let cb = std::fs::read(b.path().join("attacks.csv")).unwrap();
    assert_eq!(ca, cb);
}

#[test]
fn thread_count_does_not_change_outputs() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let run = |threads: &str, out: &Path| {
        let o = Command::new(env!("CARGO_BIN_EXE_qet"))
            .args(["qmip", "--n-shot", "500", "--seed", "2", "--out", out.to_str().unwrap()])
            .env("QET_THREADS", threads)
            .output()
            .unwrap();
        assert!(o.status.success());
        manifest(out)["outputs"].clone()
    };
    assert_eq!(run("1", a.path()), run("4", b.path()));
}

#[test]
fn manifest_lists_every_output_with_its_hash() {
    let dir = tempfile::tempdir().unwrap();
    let m = run_ok(&["qsd", "--n-shot", "300", "--seed", "3"], dir.path());
    let outputs = m["outputs"].as_array().unwrap();
    let mut listed: Vec<String> = outputs.iter().map(|o| o["path"].as_str().unwrap().to_string()).collect();
    let mut on_disk: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n != "manifest.json")
        .collect();
    listed.sort();
    on_disk.sort();
    assert_eq!(listed, on_disk);
    for o in outputs {
        let bytes = std::fs::read(dir.path().join(o["path"].as_str().unwrap())).unwrap();
        use sha2::Digest;
        assert_eq!(o["sha256"].as_str().unwrap(), hex::encode(sha2::Sha256::digest(&bytes)));
    }
}

#[test]
fn table1_reproduces_exact_rows() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&["table1", "--seed", "1"], dir.path());
    let text = std::fs::read_to_string(dir.path().join("table1.csv")).unwrap();
    let expected = [
        (1.0, 0.2, 0.0521, -0.0193, -0.0701, 0.0727),
        (1.0, 0.5, 0.1873, -0.0955, -0.2599, 0.3058),
        (1.0, 1.0, 0.2598, -0.1873, -0.3746, 0.5198),
        (1.5, 1.0, 0.3480, -0.2058, -0.4906, 0.6171),
    ];
    let exact: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect::<Vec<f64>>())
        .filter(|r| r[2] == 0.0)
        .collect();
    assert_eq!(exact.len(), 4);
    for (row, e) in exact.iter().zip(expected) {
        assert_eq!((row[0], row[1]), (e.0, e.1));
        for (got, want) in row[3..].iter().zip([e.2, e.3, e.4, e.5]) {
            assert!((got - want).abs() < 5e-4, "{got} vs {want}");
        }
    }
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"experiment": "delta-sweep", "h": 2.0, "k": 0.5, "n_deltas": 11}"#).unwrap();
    let out = dir.path().join("out");
    let m = run_ok(&["delta-sweep", "--config", cfg.to_str().unwrap(), "--k", "1.5"], &out);
    assert_eq!(m["config"]["h"], 2.0);
    assert_eq!(m["config"]["k"], 1.5);
    assert_eq!(m["config"]["n_deltas"], 11);
    assert_eq!(m["summary"]["argmin_delta"], 0.0);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(qet(&["qip", "--n-shot", "0", "--out", out]).status.code(), Some(1));
    assert_eq!(qet(&["qip", "--not-a-flag"]).status.code(), Some(1));
    assert_eq!(qet(&["frobnicate"]).status.code(), Some(1));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"h": 1.0, "colour": "blue"}"#).unwrap();
    assert_eq!(qet(&["qip", "--config", bad.to_str().unwrap(), "--out", out]).status.code(), Some(1));

    let big = dir.path().join("big.json");
    let z = vec!["1.0"; 13].join(",");
    let xx = vec!["1.0"; 12].join(",");
    std::fs::write(&big, format!(r#"{{"chain": {{"z": [{z}], "xx": [{xx}]}}}}"#)).unwrap();
    assert_eq!(qet(&["qip", "--config", big.to_str().unwrap(), "--out", out]).status.code(), Some(2));
}

#[test]
fn chain_round_is_negative() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("chain.json");
    std::fs::write(&cfg, r#"{"chain": {"z": [1.0, 0.5, 1.0, 0.7], "xx": [2.0, 1.0, 1.5]}}"#).unwrap();
    let m = run_ok(&["qip", "--config", cfg.to_str().unwrap()], &dir.path().join("out"));
    let closed = m["summary"]["receiver_energy"].as_f64().unwrap();
    let ens = m["summary"]["ensemble_energy"].as_f64().unwrap();
    assert!(closed < 0.0);
    assert!((closed - ens).abs() < 1e-10);
}

#[test]
fn level_set_rows_share_the_angle() {
    let dir = tempfile::tempdir().unwrap();
    let m = run_ok(&["level-set", "--n-samples", "5"], dir.path());
    let theta = m["summary"]["theta"].as_f64().unwrap();
    let text = std::fs::read_to_string(dir.path().join("level_set.csv")).unwrap();
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let t: f64 = cols[3].parse().unwrap();
        assert!((t - theta).abs() < 1e-9);
    }
}

use std::path::Path;
use std::process::{Command, Output};

fn atiyahdet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atiyahdet"))
        .args(args)
        .env_remove("ATIYAHDET_THREADS")
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn equilateral_json() -> String {
    let h = 3f64.sqrt() / 2.0;
    format!(
        r#"{{"geometry":"euclidean","points":[[1,0,0],[-0.5,{h},0],[-0.5,{},0]]}}"#,
        -h
    )
}

#[test]
fn eval_equilateral() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "tri.json", &equilateral_json());
    let out = atiyahdet(&["eval", "--input", &input]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["absD"].as_f64().unwrap() - 1.125).abs() < 1e-12);
    assert_eq!(v["n"], 3);
    assert_eq!(v["run_id"].as_str().unwrap().len(), 64);
}

#[test]
fn eval_batch_csv() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "batch.json",
        r#"{"configurations":[
            {"geometry":"euclidean","points":[[0,0,0],[0,0,1],[0,0,3]]},
            {"geometry":"hyperbolic","R":2.0,"points":[[0,0,0],[1,0,0]]}]}"#,
    );
    let out = atiyahdet(&["eval", "--input", &input, "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "geometry,n,D_re,D_im,absD,margin");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("euclidean,3,"));
    assert!(lines[2].starts_with("hyperbolic,2,"));
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let outside = write(
        dir.path(),
        "out.json",
        r#"{"geometry":"hyperbolic","R":1.0,"points":[[0,0,0],[0,0,2]]}"#,
    );
    let out = atiyahdet(&["eval", "--input", &outside]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("outside"));

    let broken = write(dir.path(), "broken.json", "{\"geometry\":");
    assert_eq!(atiyahdet(&["eval", "--input", &broken]).status.code(), Some(2));
    assert_eq!(
        atiyahdet(&["eval", "--input", "/nonexistent/x.json"]).status.code(),
        Some(2)
    );
    assert_eq!(atiyahdet(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(atiyahdet(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn superluminal_needs_flag() {
    let dir = tempfile::tempdir().unwrap();
    let fast =
        r#"{"geometry":"minkowski","lines":[{"a":[0,0,0],"b":[0,0,0]},{"a":[1,0.5,0],"b":[1.5,0,0]}],"t":[0,0]}"#;
    let path = write(dir.path(), "fast.json", fast);
    assert_eq!(atiyahdet(&["eval", "--input", &path]).status.code(), Some(2));
    let flagged = fast.replace(r#""t":[0,0]"#, r#""t":[0,0],"allow_superluminal":true"#);
    let path = write(dir.path(), "flagged.json", &flagged);
    let out = atiyahdet(&["eval", "--input", &path]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn verify_invariances() {
    let out = atiyahdet(&["verify", "--suite", "invariances", "--seed", "7", "--trials", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.lines().all(|l| l.starts_with("PASS")), "{stderr}");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn moduli_genus_two() {
    let out = atiyahdet(&["moduli", "--genus", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("P_M0(t) = 1 + t^2 + 4t^3 + t^4 + t^6"));
    assert!(!text.contains("FAIL"));

    let csv = atiyahdet(&["moduli", "--genus", "3", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("k,coefficient"));
    assert_eq!(text.lines().count(), 1 + 13);
}

#[test]
fn sweep_csv_full_precision() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "tri.json", &equilateral_json());
    let out = atiyahdet(&["sweep", "--input", &input, "--grid", "2,10,100"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    let mut last = 0.0;
    for row in rows {
        let (r, d) = row.split_once(',').unwrap();
        assert!(r.parse::<f64>().is_ok());
        let mantissa = d.split('e').next().unwrap().replace(['.', '-'], "");
        assert_eq!(mantissa.len(), 17, "{d}");
        let d: f64 = d.parse().unwrap();
        assert!(d >= last);
        last = d;
    }
}

#[test]
fn search_is_reproducible_across_threads() {
    let base = ["search", "--n", "4", "--trials", "12", "--seed", "3"];
    let run = |threads: &str| {
        let mut args = base.to_vec();
        args.extend(["--threads", threads]);
        atiyahdet(&args)
    };
    let a = run("1");
    let b = run("4");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<serde_json::Value> = String::from_utf8(a.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 13);
    assert!(lines[..12]
        .iter()
        .all(|r| r["best_absD"].as_f64().unwrap() >= 1.0 - 1e-9));
    assert!(lines[12].get("summary").is_some());
}

#[test]
fn threads_env_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_atiyahdet"))
        .args(["verify", "--suite", "collinear", "--trials", "2"])
        .env("ATIYAHDET_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_writes_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "tri.json", &equilateral_json());
    let out_path = dir.path().join("sweep.csv");
    let out = atiyahdet(&["sweep", "--input", &input, "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&out_path).unwrap().starts_with("R,absD\n"));
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("sweep.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "sweep");
    assert_eq!(manifest["outputs"][0], out_path.to_str().unwrap());
    assert_eq!(manifest["input_digest"].as_str().unwrap().len(), 64);
}

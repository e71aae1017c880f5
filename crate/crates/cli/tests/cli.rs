//! End-to-end tests of the command-line surface: golden outputs for every
//! subcommand, JSON round-trips, exit codes, and config handling.

use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_higgs-moduli"));
    cmd.env_remove("HIGGS_MODULI_CONFIG");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn stdout_line(output: &Output) -> String {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout.clone())
        .unwrap()
        .trim_end()
        .to_string()
}

fn write_file(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn descriptor_golden() {
    let out = run(&["descriptor", r#"{"family":"Sp","m":3}"#]);
    assert_eq!(
        stdout_line(&out),
        r#"{"copies":3,"action":{"kind":"hyperoct","m":3},"dim":6,"level":"higgs","presentation":"Sym^3 (T*X/Z_2)"}"#
    );

    let out = run(&["descriptor", r#"{"family":"GL","n":4,"d":2}"#, "--level", "bundle"]);
    assert_eq!(
        stdout_line(&out),
        r#"{"copies":2,"action":{"kind":"sym","m":2},"dim":2,"level":"bundle","presentation":"Sym^2 X"}"#
    );
}

#[test]
fn canon_golden_and_round_trip() {
    let raw = r#"{"group":{"family":"Sp","m":1},"points":[{"x":["2/3","0"],"t":["1","0"]}]}"#;
    let f = write_file(raw);
    let out = run(&["canon", f.path().to_str().unwrap()]);
    let line = stdout_line(&out);
    assert_eq!(
        line,
        r#"{"group":{"family":"Sp","m":1},"points":[{"x":["1/3","0"],"t":["-1","0"]}]}"#
    );
    // Emitted JSON re-parses to the same canonical class.
    let f2 = write_file(&line);
    let out2 = run(&["canon", f2.path().to_str().unwrap()]);
    assert_eq!(stdout_line(&out2), line);
}

#[test]
fn isom_and_singular() {
    let a = write_file(
        r#"{"group":{"family":"GL","n":2,"d":0},"points":[{"x":["1/3","0"],"t":["1","0"]},{"x":["1/3","0"],"t":["1","0"]}]}"#,
    );
    let out = run(&["isom", a.path().to_str().unwrap(), a.path().to_str().unwrap()]);
    assert_eq!(stdout_line(&out), "true");

    let b = write_file(
        r#"{"group":{"family":"GL","n":2,"d":0},"points":[{"x":["1/3","0"],"t":["1","0"]},{"x":["1/3","0"],"t":["2","0"]}]}"#,
    );
    let out = run(&["isom", a.path().to_str().unwrap(), b.path().to_str().unwrap()]);
    assert_eq!(stdout_line(&out), "false");

    let out = run(&["singular", a.path().to_str().unwrap()]);
    assert_eq!(stdout_line(&out), "true");
    let out = run(&["singular", b.path().to_str().unwrap()]);
    assert_eq!(stdout_line(&out), "false");
}

#[test]
fn hitchin_golden() {
    let class = write_file(
        r#"{"group":{"family":"GL","n":2,"d":0},"points":[{"x":["0","0"],"t":["1","0"]},{"x":["0","0"],"t":["2","0"]}]}"#,
    );
    let out = run(&["hitchin", class.path().to_str().unwrap()]);
    let line = stdout_line(&out);
    assert_eq!(
        line,
        r#"{"group":{"family":"GL","n":2,"d":0},"t":[["1","0"],["2","0"]],"coefficients":[["3","0"],["2","0"]],"char_poly":[["-3","0"],["2","0"]]}"#
    );
    // The emitted base data round-trips through the fiber entry point.
    let value: serde_json::Value = serde_json::from_str(&line).unwrap();
    let base = write_file(&serde_json::json!({ "t": value["t"] }).to_string());
    let out = run(&[
        "fiber",
        &value["group"].to_string(),
        base.path().to_str().unwrap(),
        "--model-n",
        "2",
    ]);
    let fiber: serde_json::Value = serde_json::from_str(&stdout_line(&out)).unwrap();
    assert_eq!(fiber["pattern"]["generic"], true);
    assert_eq!(fiber["model"]["enumerated"], 16);
}

#[test]
fn fiber_golden() {
    // Equal coordinates at h = 2 over X[3]: Burnside (81 + 9) / 2 = 45.
    let base = write_file(r#"{"t":[["1","0"],["1","0"]]}"#);
    let out = run(&[
        "fiber",
        r#"{"family":"GL","n":2,"d":0}"#,
        base.path().to_str().unwrap(),
        "--model-n",
        "3",
    ]);
    let line = stdout_line(&out);
    assert_eq!(
        line,
        r#"{"pattern":{"m0":0,"groups":[[["1","0"],2]],"generic":false},"descriptor":{"base":["X",1],"fiber":[{"P":1}]},"model":{"N":3,"enumerated":45,"predicted":45}}"#
    );
    // Round-trip: the emitted JSON re-parses.
    let value: serde_json::Value = serde_json::from_str(&line).unwrap();
    assert_eq!(value["model"]["enumerated"], 45);
}

#[test]
fn fiber_pgl_quotient() {
    let base = write_file(r#"{"t":[["1","0"],["1","0"],["-1","0"],["-1","0"]]}"#);
    let out = run(&[
        "fiber",
        r#"{"family":"PGL","n":4,"d":0}"#,
        base.path().to_str().unwrap(),
        "--model-n",
        "4",
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout_line(&out)).unwrap();
    assert_eq!(value["descriptor"]["r"], 2);
    assert_eq!(
        value["descriptor"]["fiber"],
        serde_json::json!([{"P_quot": {"dims": [1, 1], "r": 2}}])
    );
    assert_eq!(value["model"]["enumerated"], value["model"]["predicted"]);
}

#[test]
fn components_json_and_csv() {
    let out = run(&["components", "o", "2"]);
    let rows: serde_json::Value = serde_json::from_str(&stdout_line(&out)).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 7);

    let out = run(&["components", "o", "5", "--format", "csv"]);
    let text = stdout_line(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "family,n,k,a,w2,d,copies,dim");
    assert_eq!(lines.next().unwrap(), "O,5,1,0,,,2,4");
    assert_eq!(text.lines().count(), 9);

    let out = run(&["components", "so", "7"]);
    let rows: serde_json::Value = serde_json::from_str(&stdout_line(&out)).unwrap();
    let copies: Vec<u64> = rows
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["copies"].as_u64().unwrap())
        .collect();
    assert_eq!(copies, vec![3, 2]);
}

#[test]
fn verify_suites() {
    let out = run(&["verify", "freeness", "--h", "4", "--weights", "2,2"]);
    let report: serde_json::Value = serde_json::from_str(&stdout_line(&out)).unwrap();
    assert_eq!(report["verdict"], "confirmed");
    assert_eq!(report["parameters"]["free"], false);

    let out = run(&["verify", "quotient-iso", "--h", "2", "--weights", "1,3", "--N", "4"]);
    let report: serde_json::Value = serde_json::from_str(&stdout_line(&out)).unwrap();
    assert_eq!(report["counts"], serde_json::json!([64, 64]));

    let out = run(&["verify", "diagrams", "--seed", "7", "--samples", "2"]);
    let report: serde_json::Value = serde_json::from_str(&stdout_line(&out)).unwrap();
    assert_eq!(report["verdict"], "confirmed");
    assert_eq!(report["seed"], 7);

    // Sweep mode emits one report per parameter set.
    let out = run(&[
        "verify", "freeness", "--h-max", "2", "--l-max", "1", "--weight-max", "1",
    ]);
    assert_eq!(stdout_line(&out).lines().count(), 4);

    // The sweep is also available as a table.
    let out = run(&[
        "verify", "freeness", "--h-max", "2", "--l-max", "1", "--weight-max", "1",
        "--format", "csv",
    ]);
    let text = stdout_line(&out);
    assert_eq!(text.lines().next().unwrap(), "h,weights,r,free,verdict");
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().any(|l| l == "2,0,2,false,confirmed"));
}

#[test]
fn exit_codes() {
    // Domain error: malformed JSON.
    let f = write_file("{not json");
    let out = run(&["canon", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));

    // Domain error: constraint violation surfaced verbatim.
    let f = write_file(
        r#"{"group":{"family":"SL","n":2},"points":[{"x":["1/2","0"],"t":["1","0"]},{"x":["1/2","0"],"t":["1","0"]}]}"#,
    );
    let out = run(&["canon", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("trace constraint"));

    // Usage error: unknown subcommand.
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));

    // Domain error: projective model with incompatible N.
    let base = write_file(r#"{"t":[["1","0"],["-1","0"]]}"#);
    let out = run(&[
        "fiber",
        r#"{"family":"PGL","n":2,"d":0}"#,
        base.path().to_str().unwrap(),
        "--model-n",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(1));

    // Domain error: comparing classes of different groups.
    let gl = write_file(
        r#"{"group":{"family":"GL","n":1,"d":0},"points":[{"x":["0","0"],"t":["0","0"]}]}"#,
    );
    let sp = write_file(
        r#"{"group":{"family":"Sp","m":1},"points":[{"x":["0","0"],"t":["0","0"]}]}"#,
    );
    let out = run(&["isom", gl.path().to_str().unwrap(), sp.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("label mismatch"));
}

#[test]
fn config_file_and_flag_override() {
    let config = write_file(r#"{"model_n": 2, "seed": 5}"#);
    let base = write_file(r#"{"t":[["1","0"],["2","0"]]}"#);

    // N = 2 from the config: the generic GL fibre over X[2]^2 has 16 points.
    let out = bin()
        .env("HIGGS_MODULI_CONFIG", config.path())
        .args(["fiber", r#"{"family":"GL","n":2,"d":0}"#, base.path().to_str().unwrap()])
        .output()
        .unwrap();
    let value: serde_json::Value = serde_json::from_str(&stdout_line(&out)).unwrap();
    assert_eq!(value["model"]["N"], 2);
    assert_eq!(value["model"]["enumerated"], 16);

    // The flag overrides the config.
    let out = bin()
        .env("HIGGS_MODULI_CONFIG", config.path())
        .args([
            "fiber",
            r#"{"family":"GL","n":2,"d":0}"#,
            base.path().to_str().unwrap(),
            "--model-n",
            "3",
        ])
        .output()
        .unwrap();
    let value: serde_json::Value = serde_json::from_str(&stdout_line(&out)).unwrap();
    assert_eq!(value["model"]["N"], 3);
    assert_eq!(value["model"]["enumerated"], 81);

    // A bad config path is a domain error.
    let out = bin()
        .env("HIGGS_MODULI_CONFIG", "/nonexistent/config.json")
        .args(["descriptor", r#"{"family":"Sp","m":1}"#])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn stdin_input() {
    let mut child = bin()
        .args(["canon", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(
            br#"{"group":{"family":"Sp","m":1},"points":[{"x":["2/3","0"],"t":["1","0"]}]}"#,
        )
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(stdout_line(&out).contains(r#""x":["1/3","0"]"#));
}

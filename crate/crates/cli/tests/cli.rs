use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;

use polyknot_cli::{verify_curve, CurveFile};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polyknot"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_json(o: &Output) -> Value {
    let text = String::from_utf8(o.stderr.clone()).unwrap();
    serde_json::from_str(text.lines().next().expect("error line")).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn builtin_file(dir: &Path, name: &str) -> PathBuf {
    let o = run(&["builtin", name]);
    assert!(o.status.success());
    write(dir, &format!("{name}.json"), &stdout(&o))
}

const LISSAJOUS_3_5_4: &str =
    r#"{"format":1,"basis":"chebyshev-monic","label":"T3,T5,T4","x":[0,0,0,1],"y":[0,0,0,0,0,1],"z":[0,0,0,0,1]}"#;

#[test]
fn builtin_k5_piped_into_verify() {
    let file = stdout(&run(&["builtin", "k5"]));
    let o = run_stdin(&["verify"], &file);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).starts_with("K_5, 5 crossings, alternating\n"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn all_builtins_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (name, n) in [("k3", 3), ("k5", 5), ("k7", 7), ("k9", 9)] {
        let p = builtin_file(dir.path(), name);
        let o = run(&["verify", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        assert!(stdout(&o).starts_with(&format!("K_{n}, {n} crossings, alternating")));
    }
    let o = run(&["verify", builtin_file(dir.path(), "k9").to_str().unwrap()]);
    assert!(stdout(&o).contains("degrees (3, 14, 13), minimal-conditional"));
}

#[test]
fn obstruct_reports_exact_certificates() {
    let o = run(&["obstruct", "--n", "11"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["format"], 1);
    assert_eq!(v["case"], "mod3_2_degree_drop");
    assert_eq!(v["conclusion"], "impossible");

    let v: Value = serde_json::from_str(&stdout(&run(&["obstruct", "--n", "7"]))).unwrap();
    assert_eq!(
        (v["inequality"]["lhs"].as_str(), v["inequality"]["rhs"].as_str()),
        (Some("12"), Some("11"))
    );
    let v: Value = serde_json::from_str(&stdout(&run(&["obstruct", "--n", "3"]))).unwrap();
    assert_eq!(v["case"], "inconclusive_n3");
    assert_eq!(v["conclusion"], "possible");

    let o = run(&["obstruct", "--n", "8"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["error"]["kind"], "BadInput");
}

#[test]
fn wrong_ordering_is_not_recognized() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "t354.json", LISSAJOUS_3_5_4);
    let o = run(&["verify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("not recognized, 4 crossings"));
}

#[test]
fn malformed_input_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "bad.json",
        r#"{"format":1,"basis":"monomial","x":[0,0,0,1],"y":[1,"two"]}"#,
    );
    let o = run(&["verify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let e = error_json(&o);
    assert_eq!(e["format"], 1);
    assert_eq!(e["error"]["kind"], "ParseError");
    assert_eq!(e["error"]["field"], "y[1]");

    let o = run(&["verify", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["error"]["kind"], "IoError");

    let o = run(&["builtin", "k4"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["error"]["kind"], "UnknownName");
}

#[test]
fn degenerate_geometry_exits_3() {
    // z = T_6 is equal at both ends of every crossing of (T_3, T_4)
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "flat.json",
        r#"{"format":1,"basis":"chebyshev-monic","x":[0,0,0,1],"y":[0,0,0,0,1],"z":[0,0,0,0,0,0,1]}"#,
    );
    let o = run(&["verify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(error_json(&o)["error"]["kind"], "ZCollision");
}

#[test]
fn batch_verification_keeps_input_order() {
    let dir = tempfile::tempdir().unwrap();
    let files: Vec<PathBuf> = ["k7", "k3", "k9", "k5"]
        .iter()
        .map(|n| builtin_file(dir.path(), n))
        .collect();
    let bad = write(dir.path(), "t354.json", LISSAJOUS_3_5_4);
    let mut args: Vec<&str> = vec!["verify", "--jobs", "4"];
    args.extend(files.iter().map(|p| p.to_str().unwrap()));
    args.push(bad.to_str().unwrap());
    let o = run(&args);
    assert_eq!(o.status.code(), Some(1));
    let heads: Vec<String> = stdout(&o)
        .lines()
        .filter(|l| l.starts_with("K_") || l.starts_with("not recognized"))
        .map(|l| l.split(',').next().unwrap().to_string())
        .collect();
    assert_eq!(heads, ["K_7", "K_3", "K_9", "K_5", "not recognized"]);

    let mut seq = args.clone();
    seq[2] = "1";
    assert_eq!(stdout(&run(&seq)), stdout(&o));
}

#[test]
fn builtin_round_trip_matches_in_memory_report() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["k3", "k5", "k7", "k9"] {
        let p = builtin_file(dir.path(), name);
        let o = run(&["verify", "--json", p.to_str().unwrap()]);
        let from_cli: Value = serde_json::from_str(&stdout(&o)).unwrap();

        let b = polyknot::synth::builtin_info(name).unwrap();
        let mut report = verify_curve(&CurveFile::from_builtin(&b).to_curve()).unwrap();
        report.degree_status = Some(b.degree_status);
        assert_eq!(from_cli, serde_json::to_value(&report).unwrap(), "{name}");
    }
}

#[test]
fn json_outputs_are_stable_under_reserialization() {
    let outputs = [
        stdout(&run(&["builtin", "k9"])),
        stdout(&run(&["obstruct", "--n", "9"])),
        stdout(&run_stdin(&["verify", "--json"], &stdout(&run(&["builtin", "k7"])))),
    ];
    for text in outputs {
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(format!("{}\n", serde_json::to_string_pretty(&v).unwrap()), text);
    }
}

#[test]
fn synth_writes_a_verifiable_curve() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k7.json");
    let o = run(&[
        "synth",
        "--n",
        "7",
        "--nodes=-0.5,-0.3,-0.2,0,0.2,0.3,0.5",
        "--cos-alpha",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["report"]["degrees"], serde_json::json!([3, 10, 11]));

    let o = run(&["verify", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("K_7, 7 crossings, alternating"));
}

#[test]
fn synth_from_spec_file_with_shaping() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "spec.json",
        r#"{"format":1,"n":5,"nodes":[-0.6,-0.27,0,0.27,0.6],"cos_alpha":true}"#,
    );
    let o = run(&["synth", "--spec", spec.to_str().unwrap(), "--shaping", "-2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["shaping"], serde_json::json!([-2.0]));
    assert_eq!(v["curve"]["y"][6], -2.0);

    let o = run(&["synth", "--spec", spec.to_str().unwrap(), "--shaping", "auto"]);
    assert_eq!(o.status.code(), Some(0));

    let o = run(&["synth", "--nodes=0.5,0.5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn render_and_gauss() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = builtin_file(dir.path(), "k3");
    let svg_path = dir.path().join("k3.svg");
    let o = run(&[
        "render",
        k3.to_str().unwrap(),
        "-o",
        svg_path.to_str().unwrap(),
        "--no-labels",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert_eq!(svg.matches("<path").count(), 4);
    assert!(!svg.contains("<text"));

    let o = run(&["render", k3.to_str().unwrap(), "--samples", "16"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["gauss", k3.to_str().unwrap()]);
    let code = stdout(&o);
    assert!(code == "O1 U2 O3 U1 O2 U3\n" || code == "U1 O2 U3 O1 U2 O3\n", "{code}");
}

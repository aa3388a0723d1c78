use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fscat::bundled;

fn fscat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fscat"))
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn spec_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../core/specs/{name}.json"))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn validate_bundled_files() {
    for name in bundled::NAMES {
        let out = fscat(&["validate", spec_path(name).to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{name}: {}", stdout(&out));
    }
}

#[test]
fn validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&fscat(&["validate", "/no/such/file.json"])), 2);
    let text = bundled::spec_text("fibonacci").unwrap();
    let truncated = write(dir.path(), "cut.json", &text[..text.len() / 3]);
    assert_eq!(code(&fscat(&["validate", &truncated])), 2);

    let mut v: serde_json::Value = serde_json::from_str(text).unwrap();
    let entry = v["F"].as_array_mut().unwrap().iter_mut().last().unwrap();
    entry["value"]["c"][0] = serde_json::Value::String("7".into());
    let broken = write(dir.path(), "broken.json", &v.to_string());
    let out = fscat(&["validate", &broken, "--format", "csv"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("\"pentagon\",fail"));
}

#[test]
fn validate_formats() {
    let json = stdout(&fscat(&["validate", "@ising", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(v["groups"]
        .as_array()
        .unwrap()
        .iter()
        .all(|g| g["passed"] == true));
    let text = stdout(&fscat(&["validate", "@ising"]));
    assert!(text.contains("[pass] pentagon"));
}

#[test]
fn fibonacci_column() {
    let out = fscat(&[
        "ind",
        "@fibonacci",
        "--object",
        "tau",
        "--n",
        "1..6",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let re: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let expect = [0.0, 1.0, 1.0, 0.0, phi, 0.0];
    assert_eq!(re.len(), expect.len());
    for (x, y) in re.iter().zip(expect) {
        assert!((x - y).abs() < 1e-9, "{text}");
    }
}

#[test]
fn json_and_csv_agree_and_repeat() {
    let args = [
        "ind",
        "@ty_z2z2_minus",
        "--object",
        "sigma + a",
        "--n",
        "1..4",
        "--r",
        "0..3",
    ];
    let json1 = stdout(&fscat(&[&args[..], &["--format", "json"]].concat()));
    let json2 = stdout(&fscat(&[&args[..], &["--format", "json"]].concat()));
    assert_eq!(json1, json2);
    let csv = stdout(&fscat(&[&args[..], &["--format", "csv"]].concat()));
    let v: serde_json::Value = serde_json::from_str(&json1).unwrap();
    let cells = v["cells"].as_array().unwrap();
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(cells.len(), rows.len());
    for (cell, row) in cells.iter().zip(rows) {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[0], cell["n"].to_string());
        assert_eq!(fields[1], cell["r"].to_string());
        assert_eq!(
            fields[2].trim_matches('"'),
            cell["display"].as_str().unwrap()
        );
    }
}

#[test]
fn unit_indicators_are_one() {
    let out = fscat(&[
        "ind", "@ising", "--object", "1", "--n", "1..5", "--r", "0..4", "--format", "csv",
    ]);
    assert_eq!(code(&out), 0);
    for row in stdout(&out).lines().skip(1) {
        assert!(row.split(',').nth(2) == Some("\"1\""), "{row}");
    }
}

#[test]
fn ind_argument_errors() {
    assert_eq!(
        code(&fscat(&[
            "ind",
            "@fibonacci",
            "--object",
            "nope",
            "--n",
            "2"
        ])),
        2
    );
    assert_eq!(
        code(&fscat(&[
            "ind",
            "@fibonacci",
            "--object",
            "tau",
            "--n",
            "0..2"
        ])),
        2
    );
    assert_eq!(
        code(&fscat(&[
            "ind",
            "@fibonacci",
            "--object",
            "0*tau",
            "--n",
            "2"
        ])),
        1
    );
    assert_eq!(
        code(&fscat(&["ind", "@nope", "--object", "tau", "--n", "2"])),
        2
    );
}

#[test]
fn dimension_guard_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_fscat"))
        .args(["ind", "@fibonacci", "--object", "tau", "--n", "10"])
        .env("FSCAT_NMAX_GUARD", "8")
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("guard"));
}

#[test]
fn pivotal_choice() {
    let out = fscat(&[
        "ind",
        "@yang_lee",
        "--object",
        "tau",
        "--n",
        "2",
        "--pivotal",
        "canonical",
    ]);
    assert_eq!(code(&out), 1);
    let a = stdout(&fscat(&[
        "ind",
        "@semion",
        "--object",
        "g",
        "--n",
        "1..4",
        "--format",
        "csv",
        "--pivotal",
        "index",
        "0",
    ]));
    let b = stdout(&fscat(&[
        "ind",
        "@semion",
        "--object",
        "g",
        "--n",
        "1..4",
        "--format",
        "csv",
        "--pivotal",
        "index",
        "1",
    ]));
    assert_ne!(a, b);
}

#[test]
fn check_and_gauge_check() {
    for name in ["trivial", "fibonacci", "ising"] {
        let out = fscat(&["check", &format!("@{name}"), "--nmax", "4"]);
        assert_eq!(code(&out), 0, "{}", stdout(&out));
    }
    let out = fscat(&["gauge-check", "@fibonacci", "--seed", "0", "--trials", "20"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("unchanged under 20 gauges"));
}

#[test]
fn corrupted_pivotal_fails_check() {
    let dir = tempfile::tempdir().unwrap();
    let mut v: serde_json::Value =
        serde_json::from_str(bundled::spec_text("vec_z3").unwrap()).unwrap();
    v["pivotal"]["g"]["c"] = serde_json::json!(["-1", "0"]);
    let path = write(dir.path(), "bad_pivotal.json", &v.to_string());
    assert_eq!(code(&fscat(&["validate", &path])), 1);
    assert_eq!(code(&fscat(&["check", &path, "--nmax", "3"])), 1);
}

#[test]
fn emit_reproduces_bundled_specs() {
    let dir = tempfile::tempdir().unwrap();
    for name in bundled::NAMES {
        let path = dir.path().join(format!("{name}.json"));
        let out = fscat(&["emit", name, "-o", path.to_str().unwrap()]);
        assert_eq!(code(&out), 0);
        let emitted = std::fs::read_to_string(&path).unwrap();
        assert_eq!(
            emitted.trim_end(),
            bundled::spec_text(name).unwrap().trim_end(),
            "{name}"
        );
    }
    let out = fscat(&["emit", "pointed", "--order", "4", "--cocycle", "3"]);
    assert_eq!(code(&out), 0);
    let path = write(dir.path(), "z4.json", &stdout(&out));
    assert_eq!(code(&fscat(&["validate", &path])), 0);
    assert_eq!(code(&fscat(&["emit", "nope"])), 2);
}

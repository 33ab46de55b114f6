use std::path::PathBuf;
use std::process::{Command, Stdio};

use cdga::analysis::FormalityStatus;
use cdga::cli::{replay_report, run, Outcome, EXIT_ERROR, EXIT_NO_INPUT, EXIT_OK, EXIT_UNDECIDED, EXIT_USAGE};
use cdga::dsl::emit;
use cdga::models::builtin;
use serde_json::Value;

fn cdga(args: &[&str], stdin: &str) -> Outcome {
    let argv = std::iter::once("cdga").chain(args.iter().copied());
    run(argv, &mut stdin.as_bytes())
}

fn json(args: &[&str], stdin: &str) -> (Value, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = cdga(&full, stdin);
    let v = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", out.stdout));
    (v, out.code)
}

const BUILTINS: [&str; 3] = ["kt", "iwasawa", "fls"];

fn commands(name: &str) -> Vec<(&'static str, Vec<String>)> {
    let n = name.to_string();
    vec![
        ("validate", vec!["validate".into(), n.clone()]),
        ("betti", vec!["betti".into(), n.clone()]),
        ("cohomology", vec!["cohomology".into(), n.clone()]),
        (
            "minimal-model",
            vec!["minimal-model".into(), n.clone(), "--up-to".into(), "2".into()],
        ),
        ("formality", vec!["formality".into(), n.clone()]),
        ("lefschetz", vec!["lefschetz".into(), n.clone()]),
        ("massey", vec!["massey".into(), n.clone(), "--scan".into(), "1".into()]),
        ("donaldson", vec!["donaldson".into(), n.clone()]),
        ("example", vec!["example".into(), n]),
    ]
}

fn golden_path(name: &str, command: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.{command}.json"))
}

#[test]
fn golden_reports() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for name in BUILTINS {
        for (command, args) in commands(name) {
            let args: Vec<&str> = args.iter().map(String::as_str).collect();
            let out = cdga(
                &["--json"]
                    .iter()
                    .copied()
                    .chain(args.iter().copied())
                    .collect::<Vec<_>>(),
                "",
            );
            assert_eq!(out.code, EXIT_OK, "{name} {command}: {}", out.stderr);
            let path = golden_path(name, command);
            if update {
                std::fs::write(&path, &out.stdout).unwrap();
                continue;
            }
            let expected = std::fs::read_to_string(&path)
                .unwrap_or_else(|_| panic!("missing {}; run with UPDATE_GOLDEN=1", path.display()));
            assert_eq!(out.stdout, expected, "{name} {command} differs from {}", path.display());
        }
    }
}

#[test]
fn emitted_examples_reproduce_every_report() {
    for name in BUILTINS {
        let text = cdga(&["example", name], "").stdout;
        assert_eq!(text, emit(&builtin(name).unwrap()));
        for (command, args) in commands(name) {
            if command == "example" {
                continue;
            }
            let mut piped: Vec<&str> = args.iter().map(String::as_str).collect();
            let direct = cdga(
                &["--json"]
                    .iter()
                    .copied()
                    .chain(piped.iter().copied())
                    .collect::<Vec<_>>(),
                "",
            );
            piped[1] = "-";
            let via_stdin = cdga(
                &["--json"]
                    .iter()
                    .copied()
                    .chain(piped.iter().copied())
                    .collect::<Vec<_>>(),
                &text,
            );
            assert_eq!(direct, via_stdin, "{name} {command}");
        }
    }
}

#[test]
fn iwasawa_through_a_pipe() {
    let text = cdga(&["example", "iwasawa"], "").stdout;
    let out = cdga(&["betti", "-"], &text);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout.trim(), "betti iwasawa: (1,4,8,10,8,4,1)");
}

#[test]
fn certificates_replay() {
    for name in [
        "kt",
        "iwasawa",
        "fls",
        "fls_minimal",
        "torus4",
        "heisenberg3",
        "s3xs7",
        "cp2",
    ] {
        let input = builtin(name).unwrap();
        for extra in [&[][..], &["--strict"][..], &["--s", "1"][..], &["--s", "0"][..]] {
            let mut args = vec!["formality", name];
            args.extend_from_slice(extra);
            let (report, code) = json(&args, "");
            assert_eq!(code, EXIT_OK, "{args:?}");
            let statuses = replay_report(&input, &report).unwrap_or_else(|e| panic!("{args:?}: {e}"));
            assert!(!statuses.is_empty());
            assert!(!statuses.contains(&FormalityStatus::Undecided));
        }
    }
}

#[test]
fn tampered_certificate_is_rejected() {
    let (mut report, _) = json(&["formality", "kt"], "");
    report["verdict"]["certificate"]["witness"] = Value::from("a1*a2");
    assert!(replay_report(&builtin("kt").unwrap(), &report).is_err());
    let (mut report, _) = json(&["formality", "torus4"], "");
    report["verdict"]["certificate"]["N"]["1"] = Value::from(vec!["x1"]);
    assert!(replay_report(&builtin("torus4").unwrap(), &report).is_err());
}

#[test]
fn documented_invocations() {
    let out = cdga(&["formality", "kt"], "");
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("NOT formal"));
    assert!(out.stdout.contains("witness (s = 1): a1*a3"));

    let (v, _) = json(&["lefschetz", "fls", "--s", "2"], "");
    assert_eq!(v["first_failure"], 2);
    assert_eq!(v["degrees"][2]["kernel"], serde_json::json!(["delta1*delta2"]));

    let (v, code) = json(&["massey", "fls", "--classes", "delta1*delta2; beta; beta; beta"], "");
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["verdict"], "NONVANISHING");
}

#[test]
fn exit_codes() {
    assert_eq!(cdga(&["frobnicate"], "").code, EXIT_USAGE);
    assert_eq!(cdga(&["cohomology"], "").code, EXIT_USAGE);
    assert_eq!(cdga(&["massey", "kt"], "").code, EXIT_USAGE);
    assert_eq!(cdga(&["massey", "kt", "--classes", "a1;a2"], "").code, EXIT_USAGE);
    assert_eq!(cdga(&["--help"], "").code, EXIT_OK);
    assert_eq!(cdga(&["betti", "/no/such/file.cdga"], "").code, EXIT_NO_INPUT);
    assert_eq!(cdga(&["betti", "-"], "gen a : 1\nd a = b").code, EXIT_ERROR);
    assert_eq!(cdga(&["lefschetz", "s3xs7"], "").code, EXIT_ERROR);
    assert_eq!(
        cdga(&["donaldson", "iwasawa", "--s", "1", "--require-lefschetz"], "").code,
        EXIT_ERROR
    );
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/undecided.cdga");
    let out = cdga(&["formality", fixture, "--s", "3"], "");
    assert_eq!(out.code, EXIT_UNDECIDED, "{}", out.stdout);
    assert!(out.stdout.contains("UNDECIDED"));
    assert_eq!(cdga(&["formality", fixture], "").code, EXIT_OK);
    let (v, code) = json(&["betti", "nowhere"], "");
    assert_eq!(code, EXIT_NO_INPUT);
    assert_eq!(v["exit_code"], EXIT_NO_INPUT);
}

#[test]
fn files_and_degree_cap() {
    let dir = std::env::temp_dir().join(format!("cdga-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("kt.cdga");
    std::fs::write(&path, emit(&builtin("kt").unwrap())).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(cdga(&["betti", p], "").stdout.trim(), "betti kt: (1,3,4,3,1)");
    assert_eq!(
        cdga(&["--max-degree", "2", "betti", p], "").stdout.trim(),
        "betti kt: (1,3,4)"
    );

    let bin = env!("CARGO_BIN_EXE_cdga");
    let out = Command::new(bin)
        .args(["betti", p])
        .env("CDGA_MAX_DEGREE", "1")
        .stdin(Stdio::null())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "betti kt: (1,3)");
    let out = Command::new(bin).args(["betti", "missing.cdga"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_NO_INPUT));
    let out = Command::new(bin).arg("--bogus").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    std::fs::remove_dir_all(&dir).unwrap();
}

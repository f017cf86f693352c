use std::process::{Command, Output};

fn hk4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hk4"))
        .args(args)
        .output()
        .expect("spawn hk4")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn rr_prints_exact_values() {
    let out = hk4(&["rr", "--c4", "108", "--lambda", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("chi = 231/32"), "{text}");
    assert!(text.contains("delta_sqrt = 9/8"), "{text}");

    let out = hk4(&["rr", "--c4", "324", "--lambda", "-8/5"]);
    assert!(stdout(&out).contains("chi = 0/1"));

    let out = hk4(&["rr", "--c4", "3024", "--lambda", "17/3"]);
    let text = stdout(&out);
    assert!(
        text.contains("chi = 3/1") && text.contains("roots = {}"),
        "{text}"
    );
}

#[test]
fn rr_rejects_zero_denominator() {
    let out = hk4(&["rr", "--c4", "0", "--lambda", "1/0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn transport_reports_defects() {
    let out = hk4(&[
        "transport",
        "--p",
        "2",
        "--m",
        "0",
        "--k",
        "1",
        "--t",
        "0",
        "--betti",
        "23,0",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("b(W) = (1,0,24,0,298,0,24,0,1)"), "{text}");
    assert!(text.contains("salamon_defect(W) = 12"), "{text}");
    assert!(text.contains("chi_top(X^g) = 24"), "{text}");
}

#[test]
fn usage_and_input_errors_exit_1() {
    assert_eq!(hk4(&[]).status.code(), Some(1));
    assert_eq!(hk4(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        hk4(&["prove", "--primes", "2,4", "--out", "-"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        hk4(&["prove", "--format", "xml", "--out", "-"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        hk4(&["table1", "--candidates", "/nonexistent/file.csv"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        hk4(&[
            "transport",
            "--p",
            "9",
            "--m",
            "0",
            "--k",
            "0",
            "--t",
            "0",
            "--betti",
            "1,0"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(hk4(&["--help"]).status.code(), Some(0));
}

#[test]
fn filter_writes_all_records() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("c.csv");
    std::fs::write(&input, "b2,b3\r\n4,32\r\n23,0\r\n0,48\r\n").unwrap();
    let out_path = dir.path().join("f.json");
    let out = hk4(&[
        "filter",
        "--candidates",
        input.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&out_path).unwrap()).unwrap();
    let accepted: Vec<bool> = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["accepted"].as_bool().unwrap())
        .collect();
    assert_eq!(accepted, [false, true, false]);
}

#[test]
fn prove_skips_inadmissible_rows_with_warning() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("c.csv");
    std::fs::write(&input, "b2,b3\n0,48\n5,0\n").unwrap();
    let out = hk4(&[
        "prove",
        "--candidates",
        input.to_str().unwrap(),
        "--primes",
        "3",
        "--t-max",
        "2",
        "--format",
        "csv",
        "--out",
        "-",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("skipped"));
    assert_eq!(stdout(&out).lines().count(), 1 + 3);
}

#[test]
fn table1_skips_duplicates_and_invalid_rows() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("c.csv");
    std::fs::write(&input, "b2,b3\n23,0\n3,1\n23,0\n").unwrap();
    let out = hk4(&[
        "table1",
        "--candidates",
        input.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "No.,c2^2,c4,b2,b3\n1,828,324,23,0\n"
    );
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line 3") && stderr.contains("line 4"));
}

use std::process::{Command, Output};

fn negstat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_negstat"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn stats_reports_example_values() {
    let o = negstat(&["stats", "[-3,1,-6,2,-4,-5]", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        (v["nmaj"].as_u64(), v["ndes"].as_u64()),
        (Some(29), Some(7))
    );
    assert_eq!((v["n1"].as_u64(), v["n2"].as_u64()), (Some(4), Some(14)));

    let text = stdout(&negstat(&["stats", "[1,2,3]"]));
    assert!(text
        .lines()
        .filter(|l| l.starts_with("nmaj") || l.starts_with("len_B"))
        .all(|l| l.ends_with(" 0")));

    let o = negstat(&["stats", "[-4,1,3,-5,-2,-6]"]);
    let text = stdout(&o);
    assert!(text.contains("dmaj     21") && text.contains("ddes     6") && text.contains("note:"));
}

#[test]
fn parse_errors_exit_2() {
    let o = negstat(&["stats", "[1,1]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    assert_eq!(
        negstat(&["class", "--group", "A", "--n", "3", "--set", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(negstat(&["bogus"]).status.code(), Some(2));
    assert_eq!(negstat(&["--help"]).status.code(), Some(0));
}

#[test]
fn class_listing() {
    let o = negstat(&[
        "class", "--group", "B", "--n", "2", "--set", "0", "--both", "--output", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 4);
    assert_eq!(v["construct_equals_filter"], true);
    assert_eq!(v["gf"]["len_B"]["terms"].as_array().unwrap().len(), 4);

    let text = stdout(&negstat(&[
        "class", "--group", "A", "--n", "3", "--set", "",
    ]));
    assert!(text.starts_with("[1,2,3]\ncount\t1\n"));

    let text = stdout(&negstat(&[
        "class",
        "--group",
        "D",
        "--n",
        "4",
        "--set",
        "1,3",
        "--construct",
        "--count",
    ]));
    let blocks: Vec<&str> = text.lines().filter(|l| l.starts_with("block")).collect();
    assert_eq!(blocks.len(), 4);
    assert!(blocks[1].ends_with("(-1,2,3) (-4)"));
}

#[test]
fn verify_exit_codes_and_order() {
    let o = negstat(&["verify", "symmetry_B", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS  symmetry_B"));

    let o = negstat(&["verify", "roselle_D", "--caps", "u=4,t=10,q=10"]);
    assert_eq!(o.status.code(), Some(0));

    let o = negstat(&["verify", "fs2_A", "no_such_identity", "--n-max", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("unknown identity `no_such_identity`"));

    let o = negstat(&[
        "verify",
        "all",
        "--n-max",
        "4",
        "--output",
        "tsv",
        "--jobs",
        "4",
        "--no-timing",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    let ids: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split('\t').next().unwrap())
        .collect();
    let names: Vec<&str> = negstat_core::IdentityId::ALL
        .iter()
        .map(|id| id.name())
        .collect();
    assert_eq!(ids, names);
    assert!(text
        .lines()
        .skip(1)
        .all(|l| l.split('\t').nth(1) == Some("pass")));
}

#[test]
fn json_is_byte_stable() {
    let args = [
        "verify",
        "class_B",
        "class_D",
        "gessel_B",
        "--n-max",
        "3",
        "--output",
        "json",
        "--no-timing",
        "--jobs",
        "3",
    ];
    let a = negstat(&args);
    let b = negstat(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v[0]["identity_id"], "class_B");
    assert!(v[0].get("elapsed_ms").is_none());
}

#[test]
fn report_directory() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let o = negstat(&[
        "verify",
        "lemmino",
        "mahonian_D",
        "--n-max",
        "4",
        "--report-dir",
        path,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("lemmino.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["status"], "pass");
    assert!(v["elapsed_ms"].is_u64());
    assert!(dir.path().join("mahonian_D.json").exists());
}

#[test]
fn closed_form_and_enumerate() {
    let text = stdout(&negstat(&[
        "closed-form",
        "--group",
        "B",
        "--n",
        "2",
        "--set",
        "0",
        "--dlen",
    ]));
    assert_eq!(text.trim(), "2 + 2*q");
    let text = stdout(&negstat(&[
        "enumerate",
        "--group",
        "D",
        "--n",
        "3",
        "--count",
    ]));
    assert_eq!(text.trim(), "24");
}

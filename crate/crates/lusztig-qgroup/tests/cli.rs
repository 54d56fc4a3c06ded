//! End-to-end checks of the `lqg` binary: golden coefficient tables,
//! normal-form output, pairing evaluation, the JSON report shape, and exit
//! codes.

use std::process::Command;

fn lqg(args: &[&str]) -> (String, String, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_lqg"))
        .args(args)
        .output()
        .expect("running lqg");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code(),
    )
}

#[test]
fn tables_match_goldens() {
    let cases: &[(&[&str], &str)] = &[
        (&["tables", "p", "--n", "4"], include_str!("../golden/p_table_n4.txt")),
        (&["tables", "q", "--n", "4"], include_str!("../golden/q_table_n4.txt")),
        (&["tables", "h", "--n", "3"], include_str!("../golden/h_table_n3.txt")),
        (&["tables", "b", "--ell", "2"], include_str!("../golden/b_table_l2.txt")),
        (&["tables", "b", "--ell", "3"], include_str!("../golden/b_table_l3.txt")),
        (&["tables", "b", "--ell", "4"], include_str!("../golden/b_table_l4.txt")),
        (&["tables", "b", "--ell", "5"], include_str!("../golden/b_table_l5.txt")),
    ];
    for (args, golden) in cases {
        let (stdout, stderr, code) = lqg(args);
        assert_eq!(code, Some(0), "{:?}: {}", args, stderr);
        assert_eq!(&stdout, golden, "byte mismatch for {:?}", args);
    }
}

#[test]
fn normal_form_outputs() {
    let (stdout, _, code) = lqg(&["nf", "--generic", "--rank", "1", "K[1]*Kinv[1]"]);
    assert_eq!(code, Some(0));
    assert_eq!(stdout.trim(), "(1)");

    // The reference straightening: E[1;1]*E[2;1] at l = 3 in type A2.
    let (stdout, _, code) = lqg(&["nf", "--ell", "3", "--cartan", "A2", "E[1;1]*E[2;1]"]);
    assert_eq!(code, Some(0));
    assert_eq!(stdout.trim(), "(xi)*E[2;1]*E[1;1] + (xi)*Eij[1,2;1]");

    // Divided powers merge with a Gaussian binomial coefficient.
    let (stdout, _, code) = lqg(&["nf", "--ell", "7", "--cartan", "A1", "E[1;2]*E[1;3]"]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("E[1;5]"), "{}", stdout);

    // Parse errors are reported with positions and a nonzero exit code.
    let (_, stderr, code) = lqg(&["nf", "--generic", "--rank", "1", "K[1] @"]);
    assert_eq!(code, Some(2));
    assert!(stderr.contains("1:6"), "{}", stderr);
}

#[test]
fn pairing_reference_value() {
    let (stdout, _, code) = lqg(&[
        "pairing",
        "--ell",
        "3",
        "--cartan",
        "A1",
        "--left",
        "F[1;1]",
        "--right",
        "E[1;4]",
    ]);
    assert_eq!(code, Some(0));
    assert_eq!(stdout.trim(), "0");

    let (stdout, _, code) = lqg(&[
        "pairing",
        "--ell",
        "3",
        "--cartan",
        "A1",
        "--op",
        "sharp",
        "--left",
        "F[1;1]",
        "--right",
        "E[1;1]",
    ]);
    assert_eq!(code, Some(0));
    // F ♯ E = [K^-1; 0; 1] = -k_1, rendered in the specialized model.
    assert!(!stdout.trim().is_empty() && stdout.contains("g[1]"), "{}", stdout);
}

#[test]
fn verify_reports_are_schema_stable() {
    let (stdout, stderr, code) = lqg(&[
        "verify",
        "--suite",
        "multi",
        "--ell",
        "5",
        "--cartan",
        "A2",
        "--d",
        "1,2",
        "--bound",
        "4",
        "--seed",
        "7",
        "--format",
        "json",
    ]);
    assert_eq!(code, Some(0), "{}", stderr);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
    assert_eq!(v["suite"], "multi");
    assert_eq!(v["ell"], 5);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["failed"], 0);
    let checks = v["checks"].as_array().expect("checks array");
    assert!(!checks.is_empty());
    for c in checks {
        assert!(c["id"].is_string());
        assert!(c["rule"].is_string());
        assert_eq!(c["status"], "pass");
    }
    // The check list is sorted by id and ids are unique, so reports are
    // byte-stable and unambiguous.
    let ids: Vec<&str> = checks.iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    let mut dedup = sorted.clone();
    dedup.dedup();
    assert_eq!(sorted.len(), dedup.len(), "duplicate check ids");
}

#[test]
fn verify_exit_code_tracks_failures() {
    // An unknown suite is a usage error (exit 2), not a failed report.
    let (_, stderr, code) = lqg(&["verify", "--suite", "nonsense"]);
    assert_eq!(code, Some(2));
    assert!(stderr.contains("unknown suite"), "{}", stderr);
}

use std::process::{Command, Output};

fn qcap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcap"))
        .args(args)
        .output()
        .expect("spawn qcap")
}

fn stdout(args: &[&str]) -> String {
    let out = qcap(args);
    assert!(
        out.status.success(),
        "qcap {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn field(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
        .parse()
        .unwrap()
}

#[test]
fn qss_trivial_code_is_hashing() {
    let out = stdout(&["qss", "--code", "cat:1", "--f", "0.85"]);
    let expected = qcap::hashing_capacity(0.85);
    assert!((field(&out, "q_ss") - expected).abs() < 1e-6);
    assert!((field(&out, "coherent_information") - expected).abs() < 1e-6);
}

#[test]
fn qss_noiseless_cat_is_one_over_p() {
    let out = stdout(&["qss", "--code", "cat:5", "--f", "1.0"]);
    assert_eq!(field(&out, "q_ss"), 0.2);
}

#[test]
fn qss_from_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cat5.json");
    std::fs::write(&path, qcap::cat_code(5).unwrap().to_json()).unwrap();
    let spec = format!("file:{}", path.display());
    let out = stdout(&["qss", "--code", &spec, "--f", "0.81"]);
    assert!(field(&out, "q_ss") > 0.0);
}

#[test]
fn qss_accepts_pauli_probabilities_and_dumps_table() {
    let out = stdout(&[
        "qss",
        "--code",
        "cat:2",
        "--probs",
        "0.85,0.05,0.05,0.05",
        "--dump-table",
        "-",
    ]);
    let csv: Vec<&str> = out
        .lines()
        .skip_while(|l| !l.starts_with("syndrome,"))
        .collect();
    assert_eq!(csv[0], "syndrome,phi_plus,psi_plus,psi_minus,phi_minus");
    assert_eq!(csv.len(), 3);
    let row: Vec<f64> = csv[1]
        .split(',')
        .skip(1)
        .map(|v| v.parse().unwrap())
        .collect();
    let expected = [0.725, 0.005, 0.005, 0.085];
    for (a, b) in row.iter().zip(expected) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn qss_rejects_bad_input() {
    for args in [
        vec!["qss", "--code", "cat:5", "--f", "1.5"],
        vec!["qss", "--code", "cat:5", "--probs", "0.5,0.5,0.5,0.5"],
        vec!["qss", "--code", "tri:5", "--f", "0.9"],
        vec!["qss", "--code", "cat:5"],
        vec!["qss", "--code", "file:/does/not/exist.json", "--f", "0.9"],
    ] {
        let out = qcap(&args);
        assert!(!out.status.success(), "{args:?} should fail");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn table_rows() {
    let out = stdout(&["table"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "p,threshold,note");
    assert_eq!(lines.len(), 16);
    assert!(lines[1].starts_with("1,0.8107"));
    assert_eq!(lines[5], "5,0.809644,Best");
    assert!(lines[15].starts_with("inf,0.8180"));
    assert!(!qcap(&["table", "--p-max", "31"]).status.success());
}

#[test]
fn threshold_and_concat() {
    let out = stdout(&["threshold", "--code", "cat:5"]);
    assert_eq!(out.trim(), "cat:5 threshold: 0.809644");
    let out = stdout(&["threshold", "--code", "rotcat:5", "--code", "cat:5"]);
    assert_eq!(out.trim(), "rotcat:5+cat:5 threshold: 0.809439");
    let out = stdout(&[
        "concat",
        "--level",
        "rotcat:5",
        "--level",
        "cat:5",
        "--threshold",
    ]);
    assert_eq!(out.trim(), "rotcat:5+cat:5 threshold: 0.809439");
    let out = stdout(&["concat", "--level", "cat:2", "--level", "cat:2", "--f", "1"]);
    assert_eq!(field(&out, "q_ss"), 0.25);
}

#[test]
fn sweep_csv() {
    let out = stdout(&[
        "sweep",
        "--schemes",
        "cat:1,cat:5",
        "--f",
        "0.805:0.815:0.0005",
    ]);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "f,cat:1,cat:5");
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 21);
    assert!(rows.iter().all(|r| r.len() == 3));
    assert!(rows.windows(2).all(|w| w[0][0] < w[1][0]));
    let first_positive = |col: usize| rows.iter().position(|r| r[col] > 0.0).unwrap();
    assert!(first_positive(2) < first_positive(1));

    let out = stdout(&[
        "sweep",
        "--schemes",
        "cat:1,cat:3,rotcat:2+cat:2",
        "--f",
        "0.8:1.0:0.01",
    ]);
    let rows: Vec<Vec<f64>> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    let last = rows.last().unwrap();
    assert_eq!(last[0], 1.0);
    assert_eq!(&last[1..], &[1.0, 0.333333, 0.25]);
    assert!(rows.windows(2).all(|w| w[0][1] <= w[1][1]));
    assert!(
        !qcap(&["sweep", "--schemes", "cat:1", "--f", "0.9:0.8:0.01"])
            .status
            .success()
    );
}

#[test]
fn search_is_deterministic_and_respects_cat() {
    let args = [
        "search", "--n", "5", "--trials", "2000", "--f", "0.8097", "--seed", "7",
    ];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    assert!(a.contains("codes exceeding cat(5): 0"));
    // A weight-1 stabilizer wastes a qubit, yet cat(3) on the rest still
    // beats cat(4) here because both capacities are negative.
    let out = qcap(&[
        "search", "--n", "4", "--trials", "500", "--f", "0.8097", "--seed", "7",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("WARNING"));
    let out = stdout(&["search", "--n", "1", "--trials", "20", "--f", "0.85"]);
    let hashing = format!("{:.6}", qcap::hashing_capacity(0.85));
    assert!(out.contains(&format!("{hashing} []")));
    assert!(
        !qcap(&["search", "--n", "7", "--trials", "1", "--f", "0.9"])
            .status
            .success()
    );
}

#[test]
fn verify_passes() {
    let out = stdout(&["verify", "--quick"]);
    assert!(out.lines().all(|l| !l.starts_with("FAIL")));
    let out = stdout(&["verify", "--full"]);
    assert!(out.contains("PASS double cat threshold"));
    assert!(out.trim_end().ends_with("8 passed, 0 failed"));
}

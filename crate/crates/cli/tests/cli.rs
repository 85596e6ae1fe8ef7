use std::process::{Command, Output};

fn grasscode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grasscode"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn params_line() {
    let o = grasscode(&[
        "params",
        "--family",
        "grassmann",
        "--l",
        "2",
        "--m",
        "4",
        "--q",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n=35 k=6 d=16\n");
    let o = grasscode(&[
        "params", "--family", "schubert", "--l", "2", "--m", "4", "--p", "3",
    ]);
    assert_eq!(stdout(&o), "n=49 k=5 d=27\n");
}

#[test]
fn chow_report_line() {
    let o = grasscode(&[
        "verify", "--suite", "chow", "--l", "2", "--m", "4", "--q", "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o)
        .lines()
        .any(|l| l == "chow,(2,4,2),40320,40320,PASS"));
}

#[test]
fn affine_genmat() {
    let o = grasscode(&[
        "genmat", "--family", "affine", "--l", "2", "--m", "4", "--q", "2",
    ]);
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.len() == 16));
    assert!(rows[0].iter().all(|&x| x == "1"));
}

#[test]
fn weights_and_json() {
    let o = grasscode(&["weights", "--l", "2", "--m", "4", "--q", "2"]);
    assert_eq!(stdout(&o), "weight,count\n0,1\n16,35\n20,28\n");
    let o = grasscode(&[
        "params", "--l", "2", "--m", "4", "--q", "3", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], 130);
    assert_eq!(v["d"], 81);
    assert_eq!(v["family"], "grassmann");
}

#[test]
fn json_report_mirrors_csv() {
    let o = grasscode(&[
        "verify", "--suite", "strata", "--l", "2", "--m", "4", "--q", "2", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let first = &v[0];
    let keys: Vec<&str> = first
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(keys.len(), 5);
    for k in ["check", "params", "predicted", "observed", "status"] {
        assert!(keys.contains(&k), "{k}");
    }
    assert_eq!(first["status"], "PASS");
}

#[test]
fn usage_and_guard_exit_codes() {
    let bad = [
        vec!["params", "--l", "4", "--m", "4", "--q", "2"],
        vec!["params", "--l", "2", "--m", "4", "--q", "6"],
        vec!["params", "--l", "2", "--m", "4"],
        vec!["params", "--l", "2", "--m", "4", "--q", "4", "--p", "2"],
        vec![
            "verify", "--suite", "bogus", "--l", "2", "--m", "4", "--q", "2",
        ],
        vec!["frobnicate"],
    ];
    for args in bad {
        assert_eq!(grasscode(&args).status.code(), Some(2), "{args:?}");
    }
    let o = grasscode(&["weights", "--l", "3", "--m", "7", "--q", "4"]);
    assert_eq!(o.status.code(), Some(3));
    let o = grasscode(&[
        "verify", "--suite", "paut", "--l", "2", "--m", "4", "--q", "3",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn deterministic_output() {
    let args = [
        "verify",
        "--suite",
        "macwilliams,schubert",
        "--l",
        "2",
        "--m",
        "4",
        "--q",
        "2",
        "--seed",
        "5",
    ];
    let a = grasscode(&args);
    let b = grasscode(&args);
    assert_eq!(a.stdout, b.stdout);
    let args = [
        "geometry", "--family", "affine", "--l", "2", "--m", "4", "--q", "4",
    ];
    assert_eq!(grasscode(&args).stdout, grasscode(&args).stdout);
}

#[test]
fn out_file() {
    let dir = std::env::temp_dir().join(format!("grasscode-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.csv");
    let o = grasscode(&[
        "verify",
        "--suite",
        "hodge",
        "--l",
        "2",
        "--m",
        "4",
        "--q",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.starts_with("check,params,predicted,observed,status\n"));
    assert!(body.lines().skip(1).all(|l| l.ends_with(",PASS")));
    let o = grasscode(&[
        "params",
        "--l",
        "2",
        "--m",
        "4",
        "--q",
        "2",
        "--out",
        "/nonexistent/dir/x",
    ]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

// The full run at (2,4,2) reports exactly two failing claims: the listed
// maximal linear families of the divisor, and the predicted permutation
// group of the affine code, which brute force finds to be ten times larger.
#[test]
fn verify_all_small_fixture() {
    let o = grasscode(&["verify", "--l", "2", "--m", "4", "--q", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let failed: Vec<&str> = text
        .lines()
        .filter(|l| l.ends_with(",FAIL"))
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(failed, ["maxlin_schubert", "paut_affine"]);
    assert!(text.lines().count() > 80);
}

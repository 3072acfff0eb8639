use std::process::{Command, Output};

fn hsimplex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hsimplex"))
        .args(args)
        .env_remove("HSIMPLEX_NAIVE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(stdout(out).trim()).unwrap()
}

#[test]
fn h_examples() {
    for (args, expected) in [
        (
            &["h", "--d", "1", "--vars", "1,2,3", "--method", "naive"][..],
            "6",
        ),
        (
            &["h", "--d", "0", "--vars", "5", "--method", "recurrence"][..],
            "1",
        ),
        (
            &["h", "--d", "2", "--vars", "1,2,3", "--method", "closed"][..],
            "25",
        ),
        (
            &[
                "h",
                "--d",
                "2",
                "--vars",
                "-1/2,3",
                "--method",
                "closed_form",
            ][..],
            "31/4",
        ),
    ] {
        let out = hsimplex(args);
        assert!(out.status.success(), "{args:?}");
        assert_eq!(stdout(&out).trim(), expected, "{args:?}");
    }
}

#[test]
fn h_error_exit_codes() {
    let out = hsimplex(&["h", "--d", "2", "--vars", "1,1", "--method", "closed"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("distinct"));

    let out = hsimplex(&["h", "--d", "2", "--vars", "1,2/0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = hsimplex(&["h", "--d", "2", "--vars", "1,2", "--method", "fastest"]);
    assert_eq!(out.status.code(), Some(2));
    let out = hsimplex(&["h", "--vars", "1,2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = Command::new(env!("CARGO_BIN_EXE_hsimplex"))
        .args(["h", "--d", "10", "--vars", "1,2,3", "--method", "naive"])
        .env("HSIMPLEX_NAIVE_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn area_examples() {
    let out = hsimplex(&["area", "--poly", "2,-3,1", "--nodes", "0,1,2"]);
    assert_eq!(
        stdout(&out).trim(),
        r#"{"area":"1","differences":["1","2","1"],"h_sum":"1","signed_area":"1"}"#
    );
    let out = hsimplex(&["area", "--poly", "0,1", "--nodes", "3,7,9"]);
    assert_eq!(json(&out)["area"], "0");
    let out = hsimplex(&["area", "--poly", "0,0,0,1", "--nodes", "1,2,3"]);
    assert_eq!(json(&out)["area"], "6");
    let out = hsimplex(&["area", "--poly", "-1,0,1", "--nodes", "1,2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn volume_examples() {
    let out = hsimplex(&["volume", "--poly", "0,0,0,1", "--nodes", "1,2,3,4"]);
    assert_eq!(
        stdout(&out).trim(),
        r#"{"det":"12","difference_product":"12","h_sum":"1","parallelepiped_volume":"12","simplex_volume":"1/2"}"#
    );
    let out = hsimplex(&["volume", "--poly", "2,-3,1", "--nodes", "0,1,2"]);
    assert_eq!(json(&out)["simplex_volume"], "1/3");
    let out = hsimplex(&["volume", "--poly", "2,-3,1", "--nodes", "0,1,2,3"]);
    assert_eq!(json(&out)["det"], "0");
    let out = hsimplex(&[
        "volume", "--poly", "0,0,0,1", "--nodes", "2,1,3,4", "--signed",
    ]);
    assert_eq!(stdout(&out).trim(), "-12");
    let out = hsimplex(&[
        "volume", "--poly", "0,0,0,1", "--nodes", "2,1,3,4", "--signed", "--direct",
    ]);
    assert_eq!(stdout(&out).trim(), "-12");
    let out = hsimplex(&["volume", "--poly", "1", "--nodes", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn volume_from_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    std::fs::write(
        &path,
        r#"{"poly": ["2", "-3", "1"], "nodes": ["0", "1", "2"]}"#,
    )
    .unwrap();
    let out = hsimplex(&["volume", "--spec", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&out)["det"], "2");
    let out = hsimplex(&["area", "--spec", path.to_str().unwrap()]);
    assert_eq!(json(&out)["area"], "1");

    std::fs::write(&path, r#"{"poly": ["2"], "nodes": ["0"]}"#).unwrap();
    let out = hsimplex(&["volume", "--spec", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = hsimplex(&[
        "volume",
        "--spec",
        dir.path().join("missing.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn det_reads_stdin() {
    use std::io::Write;
    let run = |input: &str| {
        let mut child = Command::new(env!("CARGO_BIN_EXE_hsimplex"))
            .arg("det")
            .stdin(std::process::Stdio::piped())
            .stdout(std::process::Stdio::piped())
            .stderr(std::process::Stdio::piped())
            .spawn()
            .unwrap();
        child
            .stdin
            .take()
            .unwrap()
            .write_all(input.as_bytes())
            .unwrap();
        child.wait_with_output().unwrap()
    };
    let out = run(r#"{"n": 3, "entries": ["1","1","1","1","2","4","1","3","9"]}"#);
    assert_eq!(stdout(&out).trim(), "2");
    let out = run(r#"{"n": 2, "entries": ["1/2","1/3","1/4","1/5"]}"#);
    assert_eq!(stdout(&out).trim(), "1/60");
    let out = run(r#"{"n": 2, "entries": ["1"]}"#);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_examples() {
    for (suite, trials, seed) in [
        ("vanishing", "100", "42"),
        ("volume", "500", "7"),
        ("unit_area", "100", "1"),
    ] {
        let out = hsimplex(&[
            "verify", "--suite", suite, "--trials", trials, "--seed", seed,
        ]);
        assert!(out.status.success(), "{suite}");
        let report = json(&out);
        assert_eq!(report["failures"], 0);
        assert_eq!(report["suite"], suite);
        assert!(report.get("first_failure").is_none());
    }
}

#[test]
fn verify_ranges_and_errors() {
    let out = hsimplex(&[
        "verify",
        "--suite",
        "theorem5",
        "--trials",
        "20",
        "--n-range",
        "2..4",
        "--d-range",
        "0..3",
    ]);
    assert!(out.status.success());
    let report = json(&out);
    assert_eq!(report["n_range"], serde_json::json!([2, 4]));
    assert_eq!(report["d_range"], serde_json::json!([0, 3]));

    for args in [
        &["verify", "--suite", "nope"][..],
        &["verify", "--suite", "prop1", "--n-range", "2..5"][..],
        &["verify", "--suite", "theorem5", "--n-range", "2-5"][..],
        &["verify", "--n-range", "2..5"][..],
    ] {
        assert_eq!(hsimplex(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_all_prints_every_suite() {
    let out = hsimplex(&["verify", "--suite", "all", "--trials", "3", "--seed", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 12);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["failures"], 0);
    }
}

#[test]
fn bench_csv() {
    let out = hsimplex(&[
        "bench", "--n-list", "2,4", "--d-list", "1,64", "--runs", "2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("strategy,n,d,monomial_count,mean_ns,runs")
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 12);
    for row in &rows {
        let n: u128 = row[1].parse().unwrap();
        let d: u128 = row[2].parse().unwrap();
        let count: u128 = row[3].parse().unwrap();
        // C(d+n-1, n-1) for n in {2, 4}
        let expected = if n == 2 {
            d + 1
        } else {
            (d + 3) * (d + 2) * (d + 1) / 6
        };
        assert_eq!(count, expected);
        assert!(row[4].parse::<u128>().unwrap() > 0);
    }
    assert!(rows.iter().any(|r| r[..4] == ["naive", "4", "64", "47905"]));

    let out = hsimplex(&["bench", "--methods", "naive,quantum"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn svg_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig.svg");
    let p = path.to_str().unwrap();
    let out = hsimplex(&["svg", "--poly", "2,-3,1", "--nodes", "0,1,2", "--out", p]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.contains(">area = 1<"));

    let out = hsimplex(&["svg", "--poly", "2,-3,1", "--nodes", "1,1,2", "--out", p]);
    assert!(out.status.success());
    assert!(std::fs::read_to_string(&path)
        .unwrap()
        .contains(">area = 0<"));

    let out = hsimplex(&["svg", "--poly", "0,0,0,1", "--nodes", "1,2,3", "--out", p]);
    assert!(std::fs::read_to_string(&path)
        .unwrap()
        .contains(">area = 6<"));
    assert!(out.status.success());

    let bad = dir.path().join("no/such/dir/fig.svg");
    let out = hsimplex(&[
        "svg",
        "--poly",
        "1",
        "--nodes",
        "0,1,2",
        "--out",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
    let out = hsimplex(&["svg", "--poly", "1,a", "--nodes", "0,1,2", "--out", p]);
    assert_eq!(out.status.code(), Some(2));
}

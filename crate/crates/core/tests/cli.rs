//! End-to-end tests of the nullkit binary: JSON in/out, exit codes, and
//! byte-identical output for identical input.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_nullkit"));
    cmd.args(args).stdout(Stdio::piped()).stderr(Stdio::piped());
    match stdin {
        Some(input) => {
            cmd.stdin(Stdio::piped());
            let mut child = cmd.spawn().expect("spawn nullkit");
            child
                .stdin
                .as_mut()
                .expect("stdin piped")
                .write_all(input.as_bytes())
                .expect("write stdin");
            child.wait_with_output().expect("wait for nullkit")
        }
        None => {
            cmd.stdin(Stdio::null());
            cmd.output().expect("run nullkit")
        }
    }
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

const BOOLEAN_GRID_Z: &str = r#"{"ring":{"kind":"Z"},"axes":[[0,1],[0,1]]}"#;

#[test]
fn coeff_main_example() {
    let input = format!(
        r#"{{"grid":{BOOLEAN_GRID_Z},"poly":{{"nvars":2,"ring":{{"kind":"Z"}},"terms":[{{"exp":[1,1],"coef":1}}]}}}}"#
    );
    let out = run(&["coeff", "--main"], Some(&input));
    assert!(out.status.success());
    assert_eq!(stdout_str(&out).trim(), r#"{"coefficient_d":1}"#);
}

#[test]
fn zm_exception_example() {
    let out = run(
        &["check", "zm", "--m", "4", "--n", "1", "--poly", "X^3+X+2"],
        None,
    );
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["nonzeroCount"], 1);
    assert_eq!(v["exception"], true);
}

#[test]
fn selftest_exits_zero() {
    let out = run(&["selftest"], None);
    assert!(
        out.status.success(),
        "selftest stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["pass"], true);
    // one line per criterion on stderr
    let stderr = String::from_utf8_lossy(&out.stderr);
    for id in 1..=10 {
        assert!(
            stderr.contains(&format!("criterion {id:>2} [pass]")),
            "missing line for criterion {id} in: {stderr}"
        );
    }
}

#[test]
fn byte_identical_output_for_identical_input() {
    let input = format!(
        r#"{{"grid":{BOOLEAN_GRID_Z},"poly":{{"nvars":2,"ring":{{"kind":"Z"}},"terms":[{{"exp":[2,0],"coef":3}},{{"exp":[1,1],"coef":-2}}]}}}}"#
    );
    let first = run(&["trim"], Some(&input));
    let second = run(&["trim"], Some(&input));
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    // and --jobs does not change the output of the parallel scans
    let zm = r#"{"poly":{"nvars":2,"ring":{"kind":"Zm","m":6},"terms":[{"exp":[1,0],"coef":1},{"exp":[0,1],"coef":1},{"exp":[0,0],"coef":1}]}}"#;
    let one = run(&["--jobs", "1", "check", "zm"], Some(zm));
    let four = run(&["--jobs", "4", "check", "zm"], Some(zm));
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn exit_codes() {
    // domain error: non-integral grid
    let input = r#"{"grid":{"ring":{"kind":"Zm","m":4},"axes":[[0,2]]},"poly":{"nvars":1,"ring":{"kind":"Zm","m":4},"terms":[{"exp":[1],"coef":1}]}}"#;
    let out = run(&["coeff", "--main"], Some(input));
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("not integral"), "stderr: {stderr}");

    // usage error: malformed JSON
    let out = run(&["grid-info"], Some("not json"));
    assert_eq!(out.status.code(), Some(2));

    // usage error: unknown subcommand (clap's own exit code)
    let out = run(&["frobnicate"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn grid_info_reports_class_and_constants() {
    let input = r#"{"grid":{"ring":{"kind":"Zm","m":12},"axes":[[0,2]]}}"#;
    let out = run(&["grid-info"], Some(input));
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["class"], "affine_not_integral");
    assert_eq!(v["numPoints"], 2);
    assert_eq!(v["d"], serde_json::json!([1]));
}

#[test]
fn interpolate_then_invert_round_trip() {
    // interpolate the indicator of (1,1) on {0,1}² over ℤ → X1X2
    let input = format!(
        r#"{{"grid":{BOOLEAN_GRID_Z},"values":[
            {{"point":[0,0],"value":0}},
            {{"point":[0,1],"value":0}},
            {{"point":[1,0],"value":0}},
            {{"point":[1,1],"value":1}}
        ]}}"#
    );
    let out = run(&["interpolate"], Some(&input));
    assert!(out.status.success());
    let poly = stdout_str(&out);
    let v: serde_json::Value = serde_json::from_str(poly.trim()).unwrap();
    assert_eq!(v["terms"], serde_json::json!([{"coef": 1, "exp": [1, 1]}]));

    // invert reproduces the polynomial
    let invert_input = format!(r#"{{"grid":{BOOLEAN_GRID_Z},"poly":{}}}"#, poly.trim());
    let out = run(&["invert"], Some(&invert_input));
    assert!(out.status.success());
    assert_eq!(stdout_str(&out).trim(), poly.trim());
}

#[test]
fn certify_vanishing_via_cli() {
    // X1² − X1 vanishes on {0,1}
    let input = r#"{"grid":{"ring":{"kind":"Z"},"axes":[[0,1]]},"poly":{"nvars":1,"ring":{"kind":"Z"},"terms":[{"exp":[2],"coef":1},{"exp":[1],"coef":-1}]}}"#;
    let out = run(&["certify"], Some(input));
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["vanishes"], true);
    assert_eq!(v["certificate"]["trimmed"]["terms"], serde_json::json!([]));

    // X1 does not vanish; witness returned
    let input = r#"{"grid":{"ring":{"kind":"Z"},"axes":[[0,1]]},"poly":{"nvars":1,"ring":{"kind":"Z"},"terms":[{"exp":[1],"coef":1}]}}"#;
    let out = run(&["certify"], Some(input));
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["vanishes"], false);
    assert_eq!(v["witness"], serde_json::json!([1]));
}

#[test]
fn permanent_via_cli() {
    // per_(1,1)([[1,2],[3,4]]) = 10, both directly and through the grid sum
    let matrix = r#"{"ring":{"kind":"Z"},"rows":[[1,2],[3,4]]}"#;
    let input = format!(r#"{{"matrix":{matrix},"delta":[1,1]}}"#);
    let out = run(&["permanent"], Some(&input));
    assert!(out.status.success());
    assert_eq!(stdout_str(&out).trim(), r#"{"perDelta":10}"#);

    let input = format!(r#"{{"matrix":{matrix},"grid":{BOOLEAN_GRID_Z}}}"#);
    let out = run(&["permanent"], Some(&input));
    assert!(out.status.success());
    assert_eq!(stdout_str(&out).trim(), r#"{"value":10}"#);
}

#[test]
fn alon_tarsi_via_cli() {
    let input =
        r#"{"graph":{"vertices":["v1","v2"],"edges":[{"head":"v1","tail":"v2"}]},"delta":[1,0]}"#;
    let out = run(&["alon-tarsi"], Some(input));
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["de"], 1);
    assert_eq!(v["do"], 0);
    assert_eq!(v["perDelta"], 1);
}

#[test]
fn solve_construct_via_cli() {
    let input = format!(
        r#"{{"grid":{BOOLEAN_GRID_Z},"problem":{{"solutions":["s"],"trivial":[],"chi":{{"s":[1,1]}}}}}}"#
    );
    let out = run(&["solve-construct"], Some(&input));
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["terms"], serde_json::json!([{"coef": 1, "exp": [1, 1]}]));

    let check_input = format!(
        r#"{{"grid":{BOOLEAN_GRID_Z},"problem":{{"solutions":["s"],"trivial":[],"chi":{{"s":[1,1]}}}},"poly":{}}}"#,
        stdout_str(&out).trim()
    );
    let out = run(&["solve-check"], Some(&check_input));
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["ok"], true);
}

#[test]
fn check_subgraph_via_cli() {
    // K5 plus a doubled edge
    let mut edges = Vec::new();
    for u in 0..5 {
        for v in (u + 1)..5 {
            edges.push(format!(r#"["v{u}","v{v}"]"#));
        }
    }
    edges.push(r#"["v0","v1"]"#.to_string());
    let input = format!(
        r#"{{"vertices":["v0","v1","v2","v3","v4"],"edges":[{}],"extraEdge":10}}"#,
        edges.join(",")
    );
    let out = run(&["check", "subgraph"], Some(&input));
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["audit"]["degreeCondition"], true);
    assert!(!v["subgraphEdges"].as_array().unwrap().is_empty());
}

#[test]
fn check_conjecture_via_cli() {
    let out = run(
        &[
            "check",
            "conjecture",
            "--n",
            "3",
            "--m",
            "1",
            "--k",
            "2",
            "--bound",
            "2",
        ],
        None,
    );
    assert!(out.status.success());
    assert_eq!(stdout_str(&out).trim(), r#"{"counterexample":null}"#);
}

#[test]
fn scan_guard_and_force() {
    // 2^26 orientations exceed the default scan limit
    let mut edges = Vec::new();
    for _ in 0..26 {
        edges.push(r#"{"head":"a","tail":"b"}"#.to_string());
    }
    let input = format!(
        r#"{{"graph":{{"vertices":["a","b"],"edges":[{}]}},"delta":[13,13]}}"#,
        edges.join(",")
    );
    let out = run(&["alon-tarsi"], Some(&input));
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("exceeding the limit"), "stderr: {stderr}");
}

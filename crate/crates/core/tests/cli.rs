use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tracecodes"))
        .args(args)
        .env_remove("CAP")
        .env_remove("JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn build_prints_header_and_enumerator() {
    let o = run(&["build", "--p", "3", "--m", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("[29,4,18]"));
    assert_eq!(lines.next(), Some("1+44x^18+30x^21+6x^24"));
    // followed by the 29 elements of D
    assert_eq!(lines.count(), 29);

    let o = run(&["build", "--p", "3", "--m", "3"]);
    assert_eq!(stdout(&o).lines().nth(1), Some("1+6x^4+6x^5+8x^6+6x^7"));
}

#[test]
fn build_without_enumeration_and_with_export_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.csv");
    let o = run(&["build", "--p", "3", "--m", "3", "--checks", "dual", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "[8,3]\n");
    let export = std::fs::read_to_string(&path).unwrap();
    assert_eq!(export.lines().count(), 8);
    assert!(export.lines().all(|l| l.split(',').count() == 3));
}

#[test]
fn cap_exceeded_exits_3() {
    let o = run(&["build", "--p", "3", "--m", "10"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["build", "--p", "3", "--m", "9", "--max-q", "19682"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["verify", "--p", "3", "--m", "7", "--max-q", "1000"]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_tracecodes"))
        .args(["build", "--p", "3", "--m", "7"])
        .env("CAP", "1000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["build"]).status.code(), Some(2));
    assert_eq!(run(&["build", "--p", "9", "--m", "2"]).status.code(), Some(2));
    assert_eq!(run(&["build", "--p", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--grid", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--p", "3", "--m", "3", "--checks", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn predict_examples() {
    let o = run(&["predict", "--p", "5", "--m", "5", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["length"], 624);
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
    assert_eq!(v["theorem"], 3);

    let v = json(&run(&["predict", "--p", "5", "--m", "3", "--format", "json"]));
    assert_eq!(v["rows"], serde_json::json!([[14, 36], [15, 24], [16, 60], [19, 4]]));

    let o = run(&["predict", "--p", "3", "--m", "6", "--format", "csv"]);
    assert_eq!(stdout(&o), "weight,multiplicity\n162,98\n171,324\n180,306\n");

    let text = stdout(&run(&["predict", "--p", "3", "--m", "6"]));
    assert!(text.starts_with("p=3 m=6 case=EvenDivides theorem=1\nlength 260\n"));
}

#[test]
fn verify_single_report() {
    let o = run(&["verify", "--p", "3", "--m", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["checks"]["match"], true);
    assert_eq!(v["checks"]["moments"], serde_json::json!([true, true]));
    assert_eq!(v["checks"]["dual_distance_two"], true);
    assert_eq!(v["length"]["bruteforce"], 71);
    assert_eq!(v["distribution"]["predicted"], v["distribution"]["bruteforce"]);
    assert!(v["runtime_ms"].is_null());
    assert!(v["lemmas"].as_array().unwrap().iter().all(|l| l["match"] == true));
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["p", "m", "case", "theorem", "length", "distribution", "checks", "lemmas", "runtime_ms"] {
        assert!(keys.contains(&k), "missing {k}");
    }
}

#[test]
fn verify_grid_passes_in_input_order() {
    let o = run(&["verify", "--grid", "3,3;3,4;3,5;3,6;5,3;5,5;7,3", "--jobs", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    let order: Vec<(u64, u64)> =
        v.as_array().unwrap().iter().map(|r| (r["p"].as_u64().unwrap(), r["m"].as_u64().unwrap())).collect();
    assert_eq!(order, vec![(3, 3), (3, 4), (3, 5), (3, 6), (5, 3), (5, 5), (7, 3)]);
}

#[test]
fn corrupted_prediction_exits_1_and_still_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = run(&["verify", "--p", "3", "--m", "3", "--corrupt-prediction", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["checks"]["match"], false);
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "--grid", "3,3;5,3", "--jobs", "2"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let timed = json(&run(&["verify", "--p", "3", "--m", "3", "--timestamps"]));
    assert!(timed["runtime_ms"].is_u64());
}

#[test]
fn verify_csv_and_text() {
    let text = stdout(&run(&["verify", "--p", "3", "--m", "3", "--format", "csv"]));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,m,source,weight,multiplicity"));
    assert_eq!(lines.next(), Some("3,3,predicted,0,1"));
    assert!(text.contains("3,3,bruteforce,7,6\n"));

    let text = stdout(&run(&["verify", "--p", "3", "--m", "3", "--format", "text"]));
    assert!(text.trim_end().ends_with("PASS"));
}

#[test]
fn boundary_m2_is_flagged() {
    let o = run(&["verify", "--p", "3", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["distribution"]["bruteforce"], serde_json::json!([[0, 3], [1, 6]]));
    assert!(v["notes"][0].as_str().unwrap().contains("m > 2"));
}

#[test]
fn gauss_examples() {
    let o = run(&["gauss", "--p", "3", "--m", "2", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["gauss"]["closed"], "+3");
    assert!((v["gauss"]["exact_complex"][0].as_f64().unwrap() - 3.0).abs() < 1e-9);

    let v = json(&run(&["gauss", "--p", "3", "--m", "1", "--format", "json"]));
    assert_eq!(v["gauss"]["closed"], "+i·√3");

    let o = run(&["gauss", "--p", "5", "--m", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("square_identity true"));
}

#[test]
fn config_file_and_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# small run\np = 3\nm = 3\nformat = csv\nmax_q = 10\n").unwrap();
    let c = cfg.to_str().unwrap();

    // config cap is below 27
    assert_eq!(run(&["build", "--config", c]).status.code(), Some(3));
    // flags beat the config
    let o = run(&["build", "--config", c, "--max-q", "100"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("weight,multiplicity\n0,1\n4,6\n"));
    // config beats the environment
    let o = Command::new(env!("CARGO_BIN_EXE_tracecodes"))
        .args(["build", "--config", c])
        .env("CAP", "100000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));

    std::fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(run(&["build", "--config", c]).status.code(), Some(2));
}

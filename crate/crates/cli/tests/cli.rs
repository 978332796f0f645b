use std::process::{Command, Output};

fn dmf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dmf")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn units_report_kappa_and_bound() {
    let o = dmf(&["units", "--q", "2", "--I", "T*(T+1)"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout(&o);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["result"]["kappa"], 9);
    assert_eq!(v["result"]["manin_drinfeld"]["bound"], 9);
    assert_eq!(v["result"]["manin_drinfeld"]["verified"], true);
    assert_eq!(v["result"]["motivic_element"]["cocycle"], true);
}

#[test]
fn selftest_at_level_one_notes_the_empty_space() {
    let o = dmf(&["selftest", "--I", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("the cuspidal space is empty"));
}

#[test]
fn selftest_passes_at_a_composite_level() {
    let o = dmf(&["selftest", "--q", "2", "--I", "T^3+T^2+T", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(dmf(&["graph", "--I", "T^2"]).status.code(), Some(2));
    assert_eq!(dmf(&["graph", "--q", "6"]).status.code(), Some(2));
    assert_eq!(dmf(&["nonsense"]).status.code(), Some(2));
    assert_eq!(dmf(&["units", "--format", "dot", "--I", "T"]).status.code(), Some(2));
    assert_eq!(dmf(&["lfunction", "--I", "T^3+T+1"]).status.code(), Some(2));
}

#[test]
fn graph_formats() {
    let dot = dmf(&["graph", "--I", "T^2+T", "--format", "dot"]);
    assert!(String::from_utf8(dot.stdout).unwrap().starts_with("graph quotient {"));
    let json = stdout(&dmf(&["graph", "--I", "T^2+T"]));
    assert_eq!(json["result"]["betti"], 0);
    let csv = dmf(&["graph", "--q", "3", "--I", "T^2+1", "--format", "csv"]);
    assert!(String::from_utf8(csv.stdout).unwrap().starts_with("edge,origin,terminus,stabilizer_order"));
}

#[test]
fn eigenforms_table_is_genus_consistent() {
    let v = stdout(&dmf(&["eigenforms", "--I", "T^4+T^2+T", "--max-prime-deg", "1"]));
    assert_eq!(v["result"]["dimension"], v["result"]["betti"]);
    assert_eq!(v["result"]["genus_consistent"], true);
    assert!(v["result"]["forms"].as_array().unwrap().iter().all(|f| f["eigenvalues"].as_object().unwrap().len() == 2));
}

#[test]
fn same_level_pairs_are_refused_by_verify() {
    let o = dmf(&["verify", "--I", "T^3+T+1", "--f", "T^3+T+1#0", "--g", "T^3+T+1#1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("hypothesis violated"));
    // a prime level has no coprime split
    assert_eq!(dmf(&["verify", "--I", "T^3+T+1", "--all-pairs"]).status.code(), Some(1));
}

#[test]
fn cache_is_idempotent_and_detects_corruption() {
    let dir = std::env::temp_dir().join(format!("dmf-cli-cache-{}", std::process::id()));
    let dir_s = dir.to_str().unwrap();
    let args = ["delta", "--I", "T^3+T+1", "--cache-dir", dir_s];
    let cold = dmf(&args);
    let warm = dmf(&args);
    assert_eq!(cold.status.code(), Some(0));
    assert_eq!(cold.stdout, warm.stdout);
    let uncached = dmf(&args[..3]);
    assert_eq!(uncached.stdout, cold.stdout);
    for entry in std::fs::read_dir(&dir).unwrap() {
        let p = entry.unwrap().path();
        let text = std::fs::read_to_string(&p).unwrap();
        std::fs::write(&p, text.replacen("vertex", "vertx", 1)).unwrap();
    }
    assert_eq!(dmf(&args).status.code(), Some(3));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn lfunction_pairs_report_special_values() {
    let v = stdout(&dmf(&["lfunction", "--I", "T^4+T+1", "--f", "T^4+T+1#0", "--g", "T^4+T+1#1"]));
    let pair = &v["result"]["pairs"][0];
    assert_eq!(pair["hypothesis"], "SameLevel");
    assert!(pair["phi_at_0"]["Ok"].is_string());
}

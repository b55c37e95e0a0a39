use std::process::{Command, Output};

use serde_json::Value;

fn kktlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kktlab")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = kktlab(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn tower_h2r_con_is_ten_dimensional() {
    let r = report(&["tower", "--jordan", "H2:R"]);
    assert_eq!(r["schema"], "kktlab/1");
    assert_eq!(r["passed"], true);
    assert_eq!(r["results"]["con"]["dim"], 10);
    assert_eq!(r["results"]["str"]["dim"], 4);
    assert_eq!(r["results"]["der"]["dim"], 1);
}

#[test]
fn e6_trivalent_grading_has_depth_seven() {
    let r = report(&["grade", "--type", "E6", "--node", "trivalent"]);
    assert_eq!(r["results"]["depth"], 7);
    assert_eq!(r["results"]["dim"], 78);
}

#[test]
fn e7_black_three_copies_is_affine() {
    let r = report(&["extend", "--type", "E7", "--node", "black", "--n", "3"]);
    assert_eq!(r["results"]["class"], "affine");
}

#[test]
fn theorem1_a2_end() {
    let r = report(&["theorem1", "--type", "A2", "--node", "end", "--n", "2"]);
    assert_eq!(r["passed"], true);
}

#[test]
fn verify_targets() {
    assert_eq!(report(&["verify", "jordan", "--target", "H3:H"])["passed"], true);
    assert_eq!(report(&["verify", "gjts", "--target", "eq7:H2:C:2", "--mode", "sampled=200"])["passed"], true);
    assert_eq!(report(&["verify", "jacobi", "--target", "con:H2:H"])["passed"], true);
    let g = report(&["verify", "grading", "--target", "generalized:1,2:2"]);
    assert_eq!(g["results"]["five_grading"]["passed"], true);
}

#[test]
fn failing_identity_exits_one() {
    let out = kktlab(&["verify", "jordan", "--target", "H4:O", "--mode", "sampled=20"]);
    assert_eq!(out.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["passed"], false);
}

#[test]
fn fields_conformal_closure() {
    let r = report(&["fields", "--family", "conformal", "--signature", "1,3"]);
    assert_eq!(r["results"]["closure_dim"], 15);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["grade", "--type", "Q9", "--node", "1"][..],
        &["tower", "--jordan", "H3:Z"],
        &["verify", "nonsense", "--target", "H2:R"],
        &["extend", "--type", "A3", "--node", "9", "--n", "2"],
        &["frobnicate"],
        &["fields", "--family", "generalized", "--signature", "1,2"],
    ] {
        assert_eq!(kktlab(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn table_output() {
    let out = kktlab(&["--emit", "table", "extend", "--type", "A3", "--node", "end", "--n", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("results.class") && l.ends_with("finite")));
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "gjts", "--target", "eq7:H2:R:3", "--mode", "sampled=500", "--seed", "7"];
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing_ms");
        serde_json::to_string(&v).unwrap()
    };
    let a = strip(report(&args));
    let b = strip(report(&args));
    assert_eq!(a, b);
}

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nonsplit-ext"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn core_data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nonsplit-ext-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn even_k7_writes_the_golden_certificate() {
    let out = scratch("even7.json");
    let o = bin(&["even", "--k", "7", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let golden = std::fs::read_to_string(core_data("even_k7.json")).unwrap();
    assert_eq!(std::fs::read_to_string(&out).unwrap(), golden);
    assert!(String::from_utf8_lossy(&o.stderr).contains("POSITIVE: degree 84"));

    let v = bin(&["verify", out.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn tampered_certificate_exits_with_two() {
    let golden = std::fs::read_to_string(core_data("even_k7.json")).unwrap();
    let mut json: serde_json::Value = serde_json::from_str(&golden).unwrap();
    let lifts = json["generator_images"]["lifts"].as_array_mut().unwrap();
    lifts.swap(0, 1);
    let path = scratch("tampered.json");
    std::fs::write(&path, serde_json::to_string(&json).unwrap()).unwrap();
    let v = bin(&["verify", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&v.stderr).contains("failed"));
}

#[test]
fn odd_requires_allow_small_below_ten() {
    let o = bin(&["odd", "--k", "9", "--p", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = bin(&["odd", "--k", "9", "--p", "3", "--allow-small"]);
    assert_eq!(o.status.code(), Some(0));
    let cert: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(cert["degrees"]["degree"], 108);
    assert_eq!(cert["construction"]["within_hypotheses"], false);
}

#[test]
fn lemma_and_min_degree() {
    let o = bin(&["lemma-cocycle", "--k", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["inner_products"], serde_json::json!([1, 0]));

    let o = bin(&["min-degree", "--input", &core_data("sl2_3.perm")]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["degree"], 8);

    let o = bin(&[
        "min-degree",
        "--input",
        &core_data("sl2_5.perm"),
        "--budget-group-order",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = bin(&["min-degree", "--input", &core_data("klein_four.perm")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn seeds_are_deterministic() {
    let a = bin(&["even", "--k", "7", "--seed", "5"]);
    let b = bin(&["even", "--k", "7", "--seed", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bad_arguments_exit_with_usage_error() {
    assert_eq!(bin(&["even", "--k", "5"]).status.code(), Some(1));
    assert_eq!(bin(&["even"]).status.code(), Some(1));
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
}

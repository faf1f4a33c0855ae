use std::process::{Command, Output};

fn tetrageo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tetrageo")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn hyperbolic_svg_matches_golden() {
    let o = tetrageo(&["construct", "--space", "hyperbolic", "--alpha", "0.5235987756", "--p", "1", "--q", "2", "--format", "svg"]);
    assert_eq!(o.status.code(), Some(0));
    let svg = String::from_utf8(o.stdout).unwrap();
    assert_eq!(svg, include_str!("golden/hyperbolic_1_2.svg"));
    assert_eq!(svg.matches("class=\"face\"").count(), 12);
    assert!(svg.contains("r=\"1000\""));
}

#[test]
fn construct_json_has_both_documents() {
    let o = tetrageo(&["construct", "--space", "spherical", "--alpha", "1.2", "--p", "1", "--q", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["path"]["type"], serde_json::json!([1, 1]));
    assert_eq!(v["path"]["closed"], serde_json::json!(true));
    assert!(v["path"]["length"].as_f64().unwrap() < 2.0 * std::f64::consts::PI);
    assert_eq!(v["development"]["space"], "spherical");
    assert_eq!(v["development"]["faces"][0]["vertices"][0].as_array().unwrap().len(), 3);
}

#[test]
fn exit_codes() {
    let o = tetrageo(&["exists", "--space", "spherical", "--alpha", "1.40", "--p", "1", "--q", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["outcome"], "not_exists");
    let o = tetrageo(&["exists", "--space", "spherical", "--alpha", "1.2", "--p", "1", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["outcome"], "exists");
    assert_eq!(tetrageo(&["threshold", "--p", "0", "--q", "1"]).status.code(), Some(3));
    assert_eq!(tetrageo(&["construct", "--space", "spherical", "--alpha", "1.2", "--p", "2", "--q", "4"]).status.code(), Some(2));
    assert_eq!(tetrageo(&["construct", "--space", "hyperbolic", "--alpha", "1.2", "--p", "1", "--q", "1"]).status.code(), Some(2));
    assert_eq!(tetrageo(&["construct", "--space", "spherical", "--alpha", "1.2", "--edge", "1", "--p", "0", "--q", "1"]).status.code(), Some(2));
    assert_eq!(tetrageo(&["construct", "--space", "euclidean", "--p", "1", "--q", "2", "--mu", "1.0"]).status.code(), Some(2));
    assert_eq!(tetrageo(&["frobnicate"]).status.code(), Some(2));
    let o = tetrageo(&["construct", "--space", "spherical", "--alpha", "1.9", "--p", "1", "--q", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!o.stderr.is_empty());
}

#[test]
fn count_is_a_multiple_of_three() {
    let o = tetrageo(&["count", "--alpha", "0.5", "--L", "40"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let exact = v["exact"].as_u64().unwrap();
    assert_eq!(exact % 3, 0);
    assert!(exact <= v["bound"].as_u64().unwrap());
    let csv = tetrageo(&["count", "--alpha", "0.5", "--L", "40", "--format", "csv"]);
    assert!(String::from_utf8(csv.stdout).unwrap().starts_with("p,q,length,clearance\n"));
}

#[test]
fn degrees_and_config_file() {
    let dir = std::env::temp_dir().join(format!("tetrageo-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.cfg");
    std::fs::write(&cfg, "space=spherical\nalpha=80\ndeg=true\np=1\nq=1\n").unwrap();
    let a = tetrageo(&["exists", "--config", cfg.to_str().unwrap()]);
    let b = tetrageo(&["exists", "--space", "spherical", "--alpha", &(80f64.to_radians()).to_string(), "--p", "1", "--q", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    // flags override the file
    let c = tetrageo(&["exists", "--config", cfg.to_str().unwrap(), "--alpha", "100"]);
    assert_eq!(c.status.code(), Some(3));
    let out = dir.join("bounds.json");
    let o = tetrageo(&["bounds", "--p", "1", "--q", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!((v["alpha2"].as_f64().unwrap() - 1.340962).abs() < 1e-6);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_is_deterministic() {
    let a = tetrageo(&["verify", "--quick"]);
    let b = tetrageo(&["verify", "--quick"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["passed"], serde_json::json!(true));
}

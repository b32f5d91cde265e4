use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohchow")).args(args).env_remove("COHCHOW_PRECISION").output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = cli(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cohchow-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_output_of(args: &[&str], path: &PathBuf) {
    let mut v = json(args);
    v.as_object_mut().unwrap().remove("seed");
    std::fs::write(path, serde_json::to_string(&v).unwrap()).unwrap();
}

fn dims(report: &Value) -> Vec<(i64, i64)> {
    report["cohomology"].as_array().unwrap().iter().map(|r| (r["degree"].as_i64().unwrap(), r["dim"].as_i64().unwrap())).collect()
}

#[test]
fn simple_complex_of_identity_is_acyclic() {
    let p = scratch("id").join("id.json");
    write_output_of(&["sample", "map"], &p);
    let r = json(&["cohomology", p.to_str().unwrap()]);
    assert_eq!(r["input"], "map");
    assert!(dims(&r).iter().all(|(_, d)| *d == 0));
    assert_eq!(dims(&r).len(), 3);
}

#[test]
fn flipped_sign_names_the_basis_element() {
    let p = scratch("flip").join("flip.json");
    std::fs::write(
        &p,
        r#"{"source":{"degrees":[0,1],"dims":{"0":1,"1":1},"diff":{"0":[["1"]]}},
            "target":{"degrees":[0,1],"dims":{"0":1,"1":1},"diff":{"0":[["1"]]}},
            "maps":{"0":[["1"]],"1":[["-1"]]}}"#,
    )
    .unwrap();
    let out = cli(&["cohomology", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("d∘f = f∘d") && err.contains("degree 0, basis element #0"), "{err}");
}

#[test]
fn torus_deligne_dimensions() {
    // Hodge-number count: dim ker(F^p ⊕ R(p) → H^n) + dim coker in degree n − 1
    let expected: [(&str, i32, &[i64]); 5] = [
        ("torus:1", 1, &[0, 1, 1, 0]),
        ("torus:1", 2, &[0, 1, 2, 1]),
        ("torus:2", 1, &[0, 1, 4, 4, 1, 0]),
        ("torus:2", 2, &[0, 1, 4, 4, 1, 0]),
        ("torus:2", 0, &[1, 4, 6, 4, 1, 0]),
    ];
    for (name, p, want) in expected {
        let r = json(&["cohomology", "--algebra", name, "--weight", &p.to_string()]);
        let got: std::collections::BTreeMap<i64, i64> = dims(&r).into_iter().collect();
        let got: Vec<i64> = (0..want.len() as i64).map(|n| got.get(&n).copied().unwrap_or(0)).collect();
        assert_eq!(got, want, "{name} weight {p}");
    }
}

#[test]
fn inline_algebra_round_trips_through_a_file() {
    let p = scratch("alg").join("torus2.json");
    write_output_of(&["sample", "algebra", "torus:2"], &p);
    let from_file = json(&["cohomology", p.to_str().unwrap(), "--weight", "1"]);
    let shipped = json(&["cohomology", "--algebra", "torus:2", "--weight", "1"]);
    assert_eq!(from_file["cohomology"], shipped["cohomology"]);
}

#[test]
fn missing_weight_is_an_input_error() {
    let out = cli(&["cohomology", "--algebra", "torus:1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn heights() {
    let r = json(&["height", "hecke", "1", "12"]);
    assert_eq!(r["exact"], "-24 + 576*zeta'(-1)");
    assert!(r["numeric"].as_str().unwrap().starts_with("-119.2825787714597352272177243"));
    assert_eq!(json(&["height", "self", "12"])["exact"], "-6 + 144*zeta'(-1)");
    assert_eq!(json(&["height", "threefold", "12", "12"])["exact"], "-36 + 864*zeta'(-1)");
    assert_eq!(json(&["height", "dega", "355/113"])["exact"], "0");
    let table = json(&["height", "eisenstein", "0", "--to", "5"]);
    let rows: Vec<&str> = table["table"].as_array().unwrap().iter().map(|r| r["exact"].as_str().unwrap()).collect();
    assert_eq!(rows, ["-1/24 + 1/(8*pi*y)", "1", "3", "4", "7", "6"]);
}

#[test]
fn precision_flag_and_environment() {
    let r = json(&["--precision", "12", "height", "hecke", "2", "12"]);
    assert_eq!(r["numeric"], "-349.529970148");
    let out = Command::new(env!("CARGO_BIN_EXE_cohchow"))
        .args(["--format", "json", "height", "hecke", "2", "12"])
        .env("COHCHOW_PRECISION", "12")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["numeric"], "-349.529970148");
    assert_eq!(cli(&["--precision", "61", "height", "self", "12"]).status.code(), Some(2));
    assert_eq!(cli(&["height", "hecke", "0", "12"]).status.code(), Some(2));
}

#[test]
fn verify_is_byte_stable_and_echoes_the_seed() {
    let args = ["--format", "json", "--seed", "7", "--count", "5", "verify", "signs"];
    let (a, b) = (cli(&args), cli(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["suites"][0]["seed"], 7);
    assert_eq!(cli(&["verify", "bogus"]).status.code(), Some(2));
}

#[test]
fn star_examples_agree_by_both_routes() {
    for (variant, seed) in [("random", "3"), ("a-map", "5"), ("same-support", "9")] {
        let dir = scratch(variant);
        let d = dir.to_str().unwrap();
        json(&["--seed", seed, "sample", "star", "--out", d, "--variant", variant]);
        let f = |n: &str| dir.join(n).to_str().unwrap().to_string();
        let r = json(&["star", &f("cover.json"), &f("g1.json"), &f("g2.json")]);
        assert_eq!(r["equal_as_classes"], true, "{variant}");
        assert_eq!(r["kernel_simple"]["weight"], r["partition"]["weight"]);
        let only = json(&["star", &f("cover.json"), &f("g1.json"), &f("g2.json"), "--mode", "partition"]);
        assert_eq!(only["partition"], r["partition"]);
        assert!(only.get("kernel_simple").is_none());
    }
}

#[test]
fn star_rejects_mismatched_cover() {
    let dir = scratch("mismatch");
    let d = dir.to_str().unwrap();
    json(&["--seed", "3", "sample", "star", "--out", d]);
    let cover = dir.join("cover.json");
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&cover).unwrap()).unwrap();
    let points = v["points"].as_u64().unwrap();
    v["y"] = serde_json::json!((0..points).collect::<Vec<_>>());
    v["sigma_yz"] = serde_json::json!(vec!["1"; points as usize]);
    std::fs::write(&cover, v.to_string()).unwrap();
    let out = cli(&["star", cover.to_str().unwrap(), dir.join("g1.json").to_str().unwrap(), dir.join("g2.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
}

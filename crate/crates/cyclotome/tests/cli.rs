use cyclotome::cli::{cache_key, run};
use cyclotome::cyclic_modules::{build_w_cocyclic, CyclicModule};
use cyclotome::hopf::bundled;
use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/data/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["cyclotome"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn hopf_verify_bundled_file_passes() {
    let (code, out, _) = cli(&["hopf", "verify", "--algebra", &data("double_z2")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("checks pass"));
}

#[test]
fn hopf_verify_missing_file_is_an_input_error() {
    let (code, _, err) = cli(&["hopf", "verify", "--algebra", "/nonexistent/algebra.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("nonexistent"));
}

#[test]
fn hopf_verify_names_a_corrupted_antipode() {
    let mut doc = bundled("sweedler_h4").unwrap().to_json();
    doc["S"] = serde_json::json!([[0, 0, "1"], [1, 1, "1"], [2, 3, "1"], [3, 2, "-1"]]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, doc.to_string()).unwrap();
    let (code, out, _) = cli(&["hopf", "verify", "--algebra", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL antipode"), "{out}");
}

#[test]
fn malformed_json_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\"name\": ").unwrap();
    let (code, _, _) = cli(&["hopf", "verify", "--algebra", path.to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn w_relations_on_sweedler() {
    let (code, out, _) = cli(&["module", "build", "--which", "W", "--algebra", &data("sweedler_h4"), "-N", "3", "--no-cache"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("module build W for sweedler_h4 up to level 3"));
}

#[test]
fn rt_theorem_report_passes_on_double_z2() {
    let (code, out, _) = cli(&["module", "build", "--which", "rt", "--algebra", &data("double_z2"), "-N", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("ok   negative control"));
    let (code, out, _) = cli(&["tqft", "verify", "--algebra", "double_z2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["passed"], true);
}

#[test]
fn rt_rejects_a_degenerate_pairing() {
    let (code, out, _) = cli(&["module", "build", "--which", "rt", "--algebra", &data("z2_trivial")]);
    assert_eq!(code, 1);
    assert!(out.contains("not factorizable"), "{out}");
}

#[test]
fn homology_table_json_for_z2_trivial() {
    let (code, out, _) = cli(&["homology", "--algebra", &data("z2_trivial"), "-N", "3", "--format", "json", "--no-cache"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    let rows = v["table"]["degrees"].as_array().unwrap();
    let hh: Vec<u64> = rows.iter().map(|r| r["HH"].as_u64().unwrap()).collect();
    let hc: Vec<u64> = rows.iter().map(|r| r["HC"].as_u64().unwrap()).collect();
    assert_eq!(hh, [1, 0, 0, 0]);
    assert_eq!(hc, [1, 0, 1, 0]);
    for r in rows {
        assert!(r["degree"].is_u64());
    }
}

#[test]
fn sweedler_table_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().to_str().unwrap();
    let args = ["homology", "--algebra", "sweedler_h4", "--module", "W", "-N", "2", "--cache", c];
    let (a, first, err1) = cli(&args);
    let (b, second, err2) = cli(&args);
    let (_, fresh, _) = cli(&["homology", "--algebra", "sweedler_h4", "--module", "W", "-N", "2", "--no-cache"]);
    assert_eq!((a, b), (0, 0));
    assert_eq!(first, second);
    assert_eq!(first, fresh);
    assert!(first.contains("dim HH_n"));
    if std::env::var_os("CYCLOTOME_CACHE").is_none() {
        assert!(err1.contains("cache miss") && err2.contains("cache hit"), "{err1} / {err2}");
    }
}

#[test]
fn cached_and_fresh_matrices_agree() {
    if std::env::var_os("CYCLOTOME_CACHE").is_some() {
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().to_str().unwrap();
    let (code, _, _) = cli(&["module", "build", "--which", "Wco", "--algebra", &data("sweedler_h4"), "-N", "2", "--cache", c]);
    assert_eq!(code, 0);
    let bytes = std::fs::read(data("sweedler_h4")).unwrap();
    let file = dir.path().join(format!("{}.json", cache_key(&bytes, "Wco/N=2")));
    let cached: Value = serde_json::from_str(&std::fs::read_to_string(file).unwrap()).unwrap();
    let cached = CyclicModule::from_json(&cached).unwrap();
    let fresh = build_w_cocyclic(&bundled("sweedler_h4").unwrap(), 2).unwrap();
    assert!(cached.differences(&fresh).is_empty());
    assert_eq!(cached.to_json(), fresh.to_json());
}

#[test]
fn cat_examples() {
    assert_eq!(cli(&["cat", "nf", "t^2 : 1->1"]).1, "id\n");
    assert_eq!(cli(&["cat", "count", "1", "1", "cyclic"]).1, "6\n");
    assert_eq!(cli(&["cat", "L", "s0^0"]).1, "δ_1^1\n");
    assert_eq!(cli(&["cat", "phi", "d0^2"]).1, "δ_2^2\n");
    assert_eq!(cli(&["cat", "count", "2", "3", "simplicial"]).1, "20\n");
    let (code, out, _) = cli(&["cat", "relations", "2-cyclic", "3"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn cat_input_errors() {
    assert_eq!(cli(&["cat", "count", "1", "1", "hexagonal"]).0, 2);
    assert_eq!(cli(&["cat", "nf", "d7 : 1->2"]).0, 2);
    assert_eq!(cli(&["cat", "count", "1", "1", "paracyclic"]).0, 2);
    assert_eq!(cli(&["frobnicate"]).0, 2);
}

#[test]
fn rcyclic_and_para_builds() {
    let (code, out, _) = cli(&["module", "build", "--which", "rcyclic", "--algebra", "z2_semion", "-N", "1", "--no-cache"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("gives r = 4"));
    let (code, out, _) = cli(&["module", "build", "--which", "para", "--algebra", "double_z2", "-N", "2"]);
    assert_eq!(code, 0, "{out}");
    let (code, _, _) = cli(&["module", "build", "--which", "rcyclic", "--algebra", "z2_semion", "--simple", "99"]);
    assert_eq!(code, 2);
}

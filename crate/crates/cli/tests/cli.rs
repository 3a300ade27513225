use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn finfix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finfix")).args(args).output().expect("binary runs")
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn kun_space_has_the_fixed_point_property() {
    let o = finfix(&["fpp", path(&data("kun.pos"))]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["result"], "FPP");
    assert_eq!(r["command"], "fpp");
    assert!(r["inputs"].as_object().unwrap().values().all(|h| h.as_str().unwrap().len() == 64));
}

#[test]
fn crown_is_refuted_by_the_swap() {
    let o = finfix(&["fpp", path(&data("crown4.pos")), "--witness"]);
    assert_eq!(o.status.code(), Some(1));
    let w = &report(&o)["witnesses"][0]["assign"];
    assert_eq!(w["a"], "b");
    assert_eq!(w["c"], "d");
}

#[test]
fn budget_exhaustion_is_inconclusive() {
    let o = finfix(&["--budget", "5", "fpp", path(&data("kun.pos"))]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(report(&o)["result"], "inconclusive");
}

#[test]
fn torus_homology() {
    let o = finfix(&["homology", path(&data("torus7.scx"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report(&o)["result"]["betti"], serde_json::json!([1, 2, 1]));
    let o = finfix(&["homology", path(&data("rp2.scx")), "--reduced", "--with-generators"]);
    let r = report(&o);
    assert_eq!(r["result"]["betti"], serde_json::json!([0, 0, 0]));
    assert_eq!(r["result"]["torsion"][1], serde_json::json!([2]));
    assert_eq!(r["result"]["groups"][1]["torsion_generators"].as_array().unwrap().len(), 1);
}

#[test]
fn malformed_input_is_reported_with_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.scx");
    std::fs::write(&bad, "{\"facets\": [[\"a\", \"b\"],\n  [\"b\" \"c\"]]}\n").unwrap();
    let o = finfix(&["homology", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.scx:2:"), "{err}");

    let dup = dir.path().join("dup.scx");
    std::fs::write(&dup, r#"{"facets": [["a", "b"], ["c", "c"]]}"#).unwrap();
    let o = finfix(&["validate", path(&dup)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("facet 1"));

    let o = finfix(&["homology", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn implied_covers_need_repair() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("chain.pos");
    std::fs::write(&p, r#"{"points": ["a","b","c"], "covers": [["a","b"],["b","c"],["a","c"]]}"#).unwrap();
    assert_eq!(finfix(&["validate", path(&p)]).status.code(), Some(2));
    let out = dir.path().join("fixed.pos");
    let o = finfix(&["validate", path(&p), "--repair", "-o", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(finfix(&["validate", path(&out)]).status.code(), Some(0));
}

#[test]
fn reports_are_deterministic() {
    let kun = data("kun.pos");
    let a = finfix(&["fpp", path(&kun), "--witness"]);
    let b = finfix(&["--jobs", "4", "fpp", path(&kun), "--witness"]);
    assert_eq!(a.stdout, b.stdout);
    let crown = data("crown4.pos");
    let a = finfix(&["fpp", path(&crown), "--witness"]);
    let b = finfix(&["--jobs", "3", "--seedless", "fpp", path(&crown), "--witness"]);
    assert_eq!(report(&a)["witnesses"], report(&b)["witnesses"]);
}

#[test]
fn emitted_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let sub = dir.path().join("sub.scx");
    assert_eq!(finfix(&["subdivide", path(&data("tetrahedron_boundary.scx")), "--times", "2", "-o", path(&sub)]).status.code(), Some(0));
    let again = dir.path().join("again.scx");
    assert_eq!(finfix(&["validate", path(&sub), "-o", path(&again)]).status.code(), Some(0));
    assert_eq!(std::fs::read(&sub).unwrap(), std::fs::read(&again).unwrap());
    let r = report(&finfix(&["homology", path(&sub)]));
    assert_eq!(r["result"]["betti"], serde_json::json!([1, 0, 1]));

    let x = dir.path().join("x.pos");
    finfix(&["face-poset", path(&data("torus7.scx")), "-o", path(&x)]);
    let k = dir.path().join("k.scx");
    finfix(&["order-complex", path(&x), "-o", path(&k)]);
    assert_eq!(report(&finfix(&["homology", path(&k)]))["result"]["betti"], serde_json::json!([1, 2, 1]));
}

#[test]
fn asymmetrize_then_check_fixed_simplices() {
    let dir = tempfile::tempdir().unwrap();
    let l = dir.path().join("l.scx");
    let m = dir.path().join("l_map.json");
    let o = finfix(&["asymmetrize", path(&data("tetrahedron_boundary.scx")), "-o", path(&l), "--map-output", path(&m), "--certify"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(report(&o)["result"]["valid"], true);
    let o = finfix(&["fsp", path(&l)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report(&o)["result"], "FSP");
    let o = finfix(&["fsp", path(&l), "--method", "decomposition"]);
    assert_eq!(report(&o)["result"], "FSP");
    assert_eq!(finfix(&["validate", path(&m)]).status.code(), Some(0));
    let o = finfix(&["fsp", path(&data("tetrahedron_boundary.scx")), "--witness"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(report(&o)["witnesses"].as_array().unwrap().len(), 1);
}

#[test]
fn small_commands() {
    let r = report(&finfix(&["retraction", "--complex", path(&data("triangle.scx")), "--check-lemma3"]));
    assert_eq!(r["result"]["check"]["norm_bound_holds"], true);
    let o = finfix(&["aut", path(&data("tetrahedron_boundary.scx"))]);
    assert_eq!(report(&o)["result"]["order"], 24);
    let o = finfix(&["cycles", path(&data("boundary_triangle.scx")), "--dim", "1", "--norm-bound", "3"]);
    assert_eq!(report(&o)["result"]["count"], 1);
    let o = finfix(&["lefschetz", "--space", path(&data("square.scx")), "--map", path(&data("square_identity.json"))]);
    assert_eq!(report(&o)["result"]["lefschetz"], 0);
    let o = finfix(&["core", path(&data("kun.pos"))]);
    assert_eq!(report(&o)["result"]["points"], 14);
    let o = finfix(&["weak-points", path(&data("kun.pos"))]);
    let weak = report(&o)["result"]["weak_points"].clone();
    assert!(weak.as_array().unwrap().iter().any(|w| w == "x"));
    let o = finfix(&["--budget", "3", "cycles", path(&data("torus7.scx")), "--dim", "1", "--norm-bound", "3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn thm4_toy_build_and_bound_refusal() {
    let dir = tempfile::tempdir().unwrap();
    let l = dir.path().join("l.scx");
    let sphere = data("tetrahedron_boundary.scx");
    let small = data("sphere_realizations.json");
    let large = data("sphere24_realizations.json");
    let build = |real: &PathBuf, extra: &[&str]| {
        let args = ["thm4", "build", "--complex", path(&sphere), "--realizations", path(real)];
        finfix(&[&args[..], extra].concat())
    };
    let o = build(&small, &["--mode", "toy", "--depths", "0,1", "-o", path(&l)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(report(&finfix(&["homology", path(&l)]))["result"]["betti"], serde_json::json!([1, 0, 1, 0]));
    let o = build(&large, &["--mode", "bound"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(report(&o)["result"]["materializable"], false);
    let o = build(&small, &["--mode", "toy"]);
    assert_eq!(o.status.code(), Some(2));
}

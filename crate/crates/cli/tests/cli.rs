use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

use reslie::catalog::{build, Built};
use reslie::json::{parse_algebra, parse_lambda, Loaded};
use reslie::lie::iso::are_isomorphic;
use reslie::schunck::ClassDescriptor;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_reslie"))
        .args(args)
        .arg("--machine")
        .output()
        .expect("binary runs");
    let v = serde_json::from_slice(&out.stdout).expect("machine report");
    (out.status.code().unwrap(), v)
}

fn catalog_file(dir: &Path, key: &str, p: u32) -> PathBuf {
    let path = dir.join(format!("{key}_{p}.json"));
    let (code, _) = run(&["catalog", "build", key, "--p", &p.to_string(), "-o", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    path
}

fn restricted(path: &Path) -> reslie::restricted::RestrictedAlgebra {
    match parse_algebra(&std::fs::read_to_string(path).unwrap()).unwrap() {
        Loaded::Restricted(r) => r,
        Loaded::Unrestricted(_) => panic!("expected a p-operation"),
    }
}

#[test]
fn projector_of_der_is_a_c() {
    let dir = TempDir::new().unwrap();
    let der = catalog_file(dir.path(), "der", 2);
    let (code, r) = run(&["projector", "--class", "pN", der.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["projector"], "<a, c>");
    assert_eq!(r["certificates"]["covering_checked_on_lattice"], true);

    // nilpotent, [p]-closed and self-normalizing: a Cartan-type subalgebra
    let alg = restricted(&der);
    let l = alg.algebra();
    let u = reslie::catalog::span_of_labels(l, &["a".into(), "c".into()]).unwrap();
    assert!(alg.is_p_subalgebra(&u));
    assert!(l.restrict(&u).unwrap().is_nilpotent());
    assert_eq!(l.normalizer(&u), u);
}

#[test]
fn unrestrictable_input_is_rejected() {
    let dir = TempDir::new().unwrap();
    let path = catalog_file(dir.path(), "noform_L", 3);
    let (code, r) = run(&["membership", "--class", "pC", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(r["results"]["error"].as_str().unwrap().contains("not restrictable"));
}

#[test]
fn membership_verdicts_are_exit_codes() {
    let dir = TempDir::new().unwrap();
    let der = catalog_file(dir.path(), "der", 2);
    let der = der.to_str().unwrap();
    assert_eq!(run(&["membership", "--class", "pC", der]).0, 0);
    // [a, b] = b makes der non-nilpotent
    let (code, r) = run(&["membership", "--class", "pN", der]);
    assert_eq!(code, 1);
    assert_eq!(r["results"]["member"], false);
}

#[test]
fn frattini_laws_at_p2_dim3() {
    let (code, r) = run(&["check-laws", "--suite", "frattini", "--p", "2", "--max-dim", "3"]);
    assert_eq!(code, 0);
    let suite = &r["results"]["suites"][0];
    assert_eq!(suite["scopes"][0]["p"], 2);
    assert_eq!(suite["scopes"][0]["max_dim"], 3);
    assert_eq!(suite["scopes"][0]["sampled"], false);
    let law = suite["laws"].as_array().unwrap().iter().find(|l| l["law"] == "psi-contains-phi").unwrap();
    // one instance per restricted algebra in the exhaustive sample
    assert_eq!(law["instances"], 548);
    assert!(law["counterexamples"].as_array().unwrap().is_empty());
}

#[test]
fn reports_repeat_except_timing() {
    let dir = TempDir::new().unwrap();
    let p = catalog_file(dir.path(), "P", 3);
    let args = ["chief-series", p.to_str().unwrap()];
    let (_, mut a) = run(&args);
    let (_, mut b) = run(&args);
    a.as_object_mut().unwrap().remove("timing_ms");
    b.as_object_mut().unwrap().remove("timing_ms");
    assert_eq!(a, b);
    assert_eq!(a["inputs_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn exit_codes_for_errors() {
    let dir = TempDir::new().unwrap();
    let der = catalog_file(dir.path(), "der", 2);
    let der = der.to_str().unwrap();
    assert_eq!(run(&["--budget", "1", "frattini", der]).0, 3);
    assert_eq!(run(&["membership", "--class", "pZ", der]).0, 2);
    assert_eq!(run(&["check-laws", "--suite", "nosuch"]).0, 2);
    assert_eq!(run(&["inspect", dir.path().join("absent.json").to_str().unwrap()]).0, 2);
    let status = Command::new(env!("CARGO_BIN_EXE_reslie")).arg("bogus").output().unwrap().status;
    assert_eq!(status.code(), Some(2));
}

#[test]
fn envelope_of_q_is_qstar() {
    let dir = TempDir::new().unwrap();
    let q = catalog_file(dir.path(), "Q", 3);
    let out = dir.path().join("env.json");
    let (code, r) = run(&["envelope", q.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["minimal"], true);
    let env = restricted(&out);
    let Built::Restricted(qs) = build("Qstar", 3).unwrap() else { panic!() };
    assert!(are_isomorphic(env.algebra(), qs.algebra()).unwrap());
}

#[test]
fn catalog_files_round_trip() {
    let dir = TempDir::new().unwrap();
    for key in ["der", "nilder", "nocomp", "P", "Qstar", "T"] {
        let path = catalog_file(dir.path(), key, 2);
        let Built::Restricted(want) = build(key, 2).unwrap() else { panic!() };
        let got = restricted(&path);
        assert_eq!(got.algebra(), want.algebra(), "{key}");
        assert_eq!(got.images(), want.images(), "{key}");
    }
}

#[test]
fn lambda_file_classes_agree_with_library() {
    let dir = TempDir::new().unwrap();
    let lam = dir.path().join("lam.json");
    assert_eq!(run(&["catalog", "build", "notpn_variant", "-o", lam.to_str().unwrap()]).0, 0);
    let der = catalog_file(dir.path(), "der", 3);
    let class = format!("pEv:{}", lam.display());
    let (code, r) = run(&["membership", "--class", &class, der.to_str().unwrap()]);
    let (_, single) = run(&["membership", "--class", "pN", der.to_str().unwrap()]);
    assert_ne!(r["inputs_digest"], single["inputs_digest"]);

    let c = ClassDescriptor::ev(parse_lambda(&std::fs::read_to_string(&lam).unwrap()).unwrap()).unwrap();
    let member = c.contains(&restricted(&der)).unwrap();
    assert_eq!(code, if member { 0 } else { 1 });
}

#[test]
fn primitive_socle_cohomology_vanishes() {
    let dir = TempDir::new().unwrap();
    for p in [2, 3] {
        let path = catalog_file(dir.path(), "P", p);
        let (code, r) = run(&["cohomology", "--n", "2", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(r["results"]["socle_over_quotient"], serde_json::json!([0, 0, 0]));
    }
}

#[test]
fn catalog_facts_reproduce() {
    let (code, r) = run(&["reproduce-paper", "--facts-only"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["facts_passed"], true);
}

#[test]
fn catalog_list_names_every_key() {
    let (code, r) = run(&["catalog", "list"]);
    assert_eq!(code, 0);
    let keys: Vec<&str> = r["results"]["entries"].as_array().unwrap().iter().map(|e| e["key"].as_str().unwrap()).collect();
    assert_eq!(keys, reslie::catalog::KEYS);
}

//! Command-line behaviour: outputs, exit codes and determinism.

use std::fs;
use std::path::{Path, PathBuf};

use ghostloop_cli::{run, Outcome, EXIT_CAP, EXIT_MISMATCH, EXIT_OK, EXIT_SCHEMA};
use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn scenario(name: &str) -> String {
    root().join("scenarios").join(name).to_string_lossy().into_owned()
}

fn ghostloop(args: &[&str]) -> Outcome {
    run(std::iter::once("ghostloop").chain(args.iter().copied()), None)
}

#[test]
fn documented_examples() {
    let flip = ghostloop(&["check", &scenario("flip_hexagon.json")]);
    assert_eq!(flip.code, EXIT_OK);
    assert!(flip.stdout.starts_with("trivial group: match"), "{}", flip.stdout);
    let theta = ghostloop(&["bass", &scenario("theta.json")]);
    assert!(theta.stdout.contains("free rank 2"), "{}", theta.stdout);
    let s3 = ghostloop(&["complete", &scenario("s3_a3.json")]);
    assert!(s3.stdout.starts_with("completion order 2"), "{}", s3.stdout);
    let segment = ghostloop(&["bass", &scenario("segment_z2_z3.json")]);
    assert!(segment.stdout.contains("abelianization: Z/6"), "{}", segment.stdout);
}

#[test]
fn every_subcommand_accepts_its_kinds() {
    for (cmd, file) in [
        ("pi1", "torus.json"),
        ("pi1", "flip_hexagon.json"),
        ("quotient", "antipodal_sphere_arc.json"),
        ("oracle", "antipodal_sphere_arc.json"),
        ("armstrong", "flip_hexagon.json"),
        ("fingerprint", "trefoil_vs_braid.json"),
        ("fingerprint", "theta.json"),
        ("fingerprint", "torus.json"),
        ("check", "trefoil_vs_braid.json"),
        ("check", "theta.json"),
        ("check", "s3_transposition.json"),
    ] {
        let out = ghostloop(&[cmd, &scenario(file)]);
        assert_eq!(out.code, EXIT_OK, "{cmd} {file}: {}", out.stderr);
    }
    let wrong = ghostloop(&["bass", &scenario("flip_hexagon.json")]);
    assert_eq!(wrong.code, EXIT_SCHEMA);
}

#[test]
fn mismatch_exits_one() {
    let out = ghostloop(&["check", &scenario("negative/flip_hexagon_dropped_lambda.json")]);
    assert_eq!(out.code, EXIT_MISMATCH);
    let mut dir = root().join("scenarios/negative").to_string_lossy().into_owned();
    dir.push('/');
    let all = ghostloop(&["check", "--dir", &dir]);
    assert_eq!(all.code, EXIT_MISMATCH);
    assert!(all.stdout.ends_with("1 scenarios: 0 match, 1 mismatch, 0 error\n"), "{}", all.stdout);
}

#[test]
fn schema_and_cap_errors() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    };
    let unknown_kind = write("a.json", r#"{"kind": "sheaf"}"#);
    let extra_field = write("b.json", r#"{"kind": "gog", "graph": {"vertices": [0]}, "colour": 1}"#);
    let not_simplicial = write(
        "c.json",
        r#"{"kind": "action", "action": {"complex": {"simplices": [[0, 1], [1, 2]]}, "generators": [{"0": 1, "1": 2, "2": 0}]}}"#,
    );
    let not_json = write("d.json", "{");
    for f in [&unknown_kind, &extra_field, &not_simplicial, &not_json] {
        assert_eq!(ghostloop(&["quotient", f]).code, EXIT_SCHEMA, "{f}");
    }
    assert_eq!(ghostloop(&["quotient", "/nonexistent.json"]).code, EXIT_SCHEMA);
    assert_eq!(ghostloop(&["frobnicate"]).code, EXIT_SCHEMA);
    assert_eq!(ghostloop(&["check"]).code, EXIT_SCHEMA);

    let big = ghostloop(&["--group-cap", "2", "complete", &scenario("s3_a3.json")]);
    assert_eq!(big.code, EXIT_CAP, "{}", big.stderr);
    let homs = ghostloop(&["--hom-generators", "1", "fingerprint", &scenario("trefoil_vs_braid.json")]);
    assert_eq!(homs.code, EXIT_CAP);
    let lattice = write(
        "e.json",
        r#"{"kind": "prodiscrete", "group": {"name": "Z70"}, "family": []}"#,
    );
    assert_eq!(ghostloop(&["check", &lattice]).code, EXIT_CAP);
}

#[test]
fn json_reports_are_versioned_and_deterministic() {
    let corpus = root().join("corpus").to_string_lossy().into_owned();
    let a = ghostloop(&["--json", "--seed", "9", "check", "--dir", &corpus]);
    let b = ghostloop(&["--json", "--seed", "9", "check", "--dir", &corpus]);
    assert_eq!(a, b);
    let report: Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(report["schema_version"], 1);
    let files: Vec<&str> = report["results"].as_array().unwrap().iter().map(|r| r["file"].as_str().unwrap()).collect();
    let mut sorted = files.clone();
    sorted.sort();
    assert_eq!(files, sorted);

    let one = ghostloop(&["--json", "quotient", &scenario("antipodal_sphere_arc.json")]);
    let v: Value = serde_json::from_str(&one.stdout).unwrap();
    assert_eq!((v["schema_version"].as_u64(), v["command"].as_str()), (Some(1), Some("quotient")));
    assert_eq!(one, ghostloop(&["--json", "quotient", &scenario("antipodal_sphere_arc.json")]));
}

#[test]
fn panel_selection() {
    let file = scenario("trefoil_vs_braid.json");
    let env = run(["ghostloop", "fingerprint", &file], Some("Z3,S3"));
    assert!(env.stdout.contains("homs: Z3=3 S3=12\n"), "{}", env.stdout);
    let flag = run(["ghostloop", "--panel", "Z2", "fingerprint", &file], Some("Z3,S3"));
    assert!(flag.stdout.contains("homs: Z2=2\n"), "{}", flag.stdout);
    assert_eq!(run(["ghostloop", "fingerprint", &file], Some("Z3,Bogus")).code, EXIT_SCHEMA);
}

#[test]
fn seeds_select_random_trees_without_changing_answers() {
    for seed in ["1", "2", "3"] {
        let out = ghostloop(&["--seed", seed, "check", &scenario("antipodal_sphere_arc.json")]);
        assert_eq!(out.code, EXIT_OK);
        let bass = ghostloop(&["--seed", seed, "bass", &scenario("theta.json")]);
        assert!(bass.stdout.contains("free rank 2"));
    }
}

//! End-to-end CLI behavior: exit codes, file outputs, and the certificate
//! round trip through a separate verify invocation.

use catbox::io;
use catbox::presheaf::{PresheafMap, TabularPresheaf};
use std::path::Path;
use std::sync::Arc;

fn run(args: &[&str]) -> i32 {
    let mut argv = vec!["catbox".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    catbox_cli::run(argv)
}

fn write_fixture(path: &Path, contents: &str) {
    std::fs::write(path, contents).unwrap();
}

fn point_class_and_map(dir: &Path) -> (String, String) {
    let base = catbox::fincat::terminal_category();
    let empty = TabularPresheaf::initial(Arc::clone(&base));
    let one = TabularPresheaf::constant_set(Arc::clone(&base), &["c"]);
    let t3 = TabularPresheaf::constant_set(Arc::clone(&base), &["t0", "t1", "t2"]);
    let gen = PresheafMap::new(empty.clone(), one, vec![vec![]]).unwrap();
    let f = PresheafMap::new(empty, t3, vec![vec![]]).unwrap();
    let class_path = dir.join("class.json");
    let map_path = dir.join("f.json");
    write_fixture(
        &class_path,
        &io::to_json_line(&io::class_file(std::slice::from_ref(&gen))).unwrap(),
    );
    write_fixture(&map_path, &io::to_json_line(&io::map_file(&f)).unwrap());
    (
        class_path.display().to_string(),
        map_path.display().to_string(),
    )
}

#[test]
fn validate_rejects_missing_composites_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    write_fixture(
        &bad,
        r#"{"objects":["*"],"morphisms":[{"name":"id","dom":"*","cod":"*"}],"identities":{"*":"id"},"compose":[]}"#,
    );
    let out = dir.path().join("out");
    let code = run(&[
        "validate",
        &bad.display().to_string(),
        "--out",
        &out.display().to_string(),
    ]);
    assert_eq!(code, 1);
}

#[test]
fn validate_rejects_non_associative_table_with_exit_1() {
    // unital 3-element table with (q*q)*p != q*(q*p)
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("nonassoc.json");
    write_fixture(
        &bad,
        r#"{"objects":["*"],
            "morphisms":[{"name":"u","dom":"*","cod":"*"},{"name":"p","dom":"*","cod":"*"},{"name":"q","dom":"*","cod":"*"}],
            "identities":{"*":"u"},
            "compose":[["u","u","u"],["u","p","p"],["u","q","q"],
                       ["p","u","p"],["p","p","p"],["p","q","p"],
                       ["q","u","q"],["q","p","q"],["q","q","u"]]}"#,
    );
    let out = dir.path().join("out");
    let code = run(&[
        "validate",
        &bad.display().to_string(),
        "--out",
        &out.display().to_string(),
    ]);
    assert_eq!(code, 1);
}

#[test]
fn validate_accepts_and_normalizes() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("cat.json");
    write_fixture(
        &good,
        r#"{"objects":["*"],"morphisms":[{"name":"id","dom":"*","cod":"*"}],"identities":{"*":"id"},"compose":[["id","id","id"]]}"#,
    );
    let out = dir.path().join("out");
    let code = run(&[
        "validate",
        &good.display().to_string(),
        "--out",
        &out.display().to_string(),
    ]);
    assert_eq!(code, 0);
    assert!(out.join("category.json").exists());
    assert!(out.join("manifest.json").exists());
}

#[test]
fn max_stages_zero_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let (class, map) = point_class_and_map(dir.path());
    let code = run(&[
        "factorize",
        "--class",
        &class,
        "--map",
        &map,
        "--max-stages",
        "0",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn unknown_flag_is_usage_error() {
    assert_eq!(run(&["factorize", "--class"]), 2);
    assert_eq!(run(&["no-such-command"]), 2);
}

#[test]
fn factorize_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (class, map) = point_class_and_map(dir.path());
    let out = dir.path().join("fact");
    let code = run(&[
        "factorize",
        "--class",
        &class,
        "--map",
        &map,
        "--out",
        &out.display().to_string(),
    ]);
    assert_eq!(code, 0);
    let cert = out.join("certificate.json");
    assert!(cert.exists());

    let verify_out = dir.path().join("verify");
    let code = run(&[
        "verify",
        "--certificate",
        &cert.display().to_string(),
        "--class",
        &class,
        "--out",
        &verify_out.display().to_string(),
    ]);
    assert_eq!(code, 0);
    let answer = std::fs::read_to_string(verify_out.join("answer.json")).unwrap();
    assert!(answer.contains("true"));

    // a corrupted certificate fails verification with a domain error
    let text = std::fs::read_to_string(&cert).unwrap();
    let corrupted = text.replace("\"status\":\"fixpoint\"", "\"status\":\"budget_exhausted:1\"");
    let bad_cert = dir.path().join("bad_cert.json");
    // flipping only the status keeps everything else consistent, so flip a
    // stage element name instead to damage a pushout square
    let damaged = text.replacen("\"1:0:c\"", "\"0:t9\"", 1);
    if damaged != text {
        write_fixture(&bad_cert, &damaged);
        let code = run(&[
            "verify",
            "--certificate",
            &bad_cert.display().to_string(),
            "--class",
            &class,
            "--out",
            &dir.path().join("verify_bad").display().to_string(),
        ]);
        assert_eq!(code, 1);
    }
    let _ = corrupted;
}

#[test]
fn simplicial_census_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("simp");
    let code = run(&[
        "simplicial",
        "delta1s",
        "--window",
        "5",
        "--out",
        &out.display().to_string(),
    ]);
    assert_eq!(code, 0);
    let census = std::fs::read_to_string(out.join("census.json")).unwrap();
    assert_eq!(census.trim(), "[2,2,1,0,0]");
}

#[test]
fn window_too_small_is_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let code = run(&[
        "simplicial",
        "delta1s",
        "--window",
        "2",
        "--out",
        &dir.path().join("o").display().to_string(),
    ]);
    assert_eq!(code, 1);
}

#[test]
fn lift_solve_writes_diagonals_as_map_files() {
    let dir = tempfile::tempdir().unwrap();
    let base = catbox::fincat::terminal_category();
    let two = TabularPresheaf::constant_set(Arc::clone(&base), &["a", "b"]);
    let one = TabularPresheaf::constant_set(Arc::clone(&base), &["p"]);
    let empty = TabularPresheaf::initial(Arc::clone(&base));
    let f = PresheafMap::new(empty.clone(), two.clone(), vec![vec![]]).unwrap();
    let g = PresheafMap::new(two.clone(), one.clone(), vec![vec![0, 0]]).unwrap();
    let u = PresheafMap::new(empty.clone(), two.clone(), vec![vec![]]).unwrap();
    let v = PresheafMap::new(two.clone(), one, vec![vec![0, 0]]).unwrap();
    for (name, m) in [("f", &f), ("g", &g), ("u", &u), ("v", &v)] {
        write_fixture(
            &dir.path().join(format!("{name}.json")),
            &io::to_json_line(&io::map_file(m)).unwrap(),
        );
    }
    let out = dir.path().join("solve");
    let code = run(&[
        "lift",
        "solve",
        "--left",
        &dir.path().join("f.json").display().to_string(),
        "--right",
        &dir.path().join("g.json").display().to_string(),
        "--top",
        &dir.path().join("u.json").display().to_string(),
        "--bottom",
        &dir.path().join("v.json").display().to_string(),
        "--out",
        &out.display().to_string(),
    ]);
    assert_eq!(code, 0);
    // the fold collapses both points, so every function 2 -> 2 fills
    for i in 0..4 {
        assert!(out.join(format!("diagonal{i}.json")).exists());
    }
    let answer = std::fs::read_to_string(out.join("answer.json")).unwrap();
    assert!(answer.contains("\"result\":4"));
}

#[test]
fn construct_comma_of_identities_counts_morphisms() {
    let dir = tempfile::tempdir().unwrap();
    let c = catbox::fincat::walking_arrow();
    let id = catbox::fincat::Functor::identity(&c);
    let functor_path = dir.path().join("id.json");
    write_fixture(
        &functor_path,
        &io::to_json_line(&io::functor_file(&id)).unwrap(),
    );
    let out = dir.path().join("comma");
    let code = run(&[
        "construct",
        "comma",
        "--left",
        &functor_path.display().to_string(),
        "--right",
        &functor_path.display().to_string(),
        "--out",
        &out.display().to_string(),
    ]);
    assert_eq!(code, 0);
    let comma: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("comma.json")).unwrap()).unwrap();
    assert_eq!(comma["objects"].as_array().unwrap().len(), 3);
}

#[test]
fn colimit_pushout_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let base = catbox::fincat::terminal_category();
    let pt = TabularPresheaf::constant_set(Arc::clone(&base), &["*"]);
    let ab = TabularPresheaf::constant_set(Arc::clone(&base), &["a", "b"]);
    let incl = PresheafMap::new(pt, ab, vec![vec![0]]).unwrap();
    let map_path = dir.path().join("incl.json");
    write_fixture(&map_path, &io::to_json_line(&io::map_file(&incl)).unwrap());
    let out = dir.path().join("po");
    let code = run(&[
        "colimit",
        "pushout",
        "--left",
        &map_path.display().to_string(),
        "--right",
        &map_path.display().to_string(),
        "--out",
        &out.display().to_string(),
    ]);
    assert_eq!(code, 0);
    let pushout: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("pushout.json")).unwrap())
            .unwrap();
    // gluing two copies of a pair at one point leaves three elements
    assert_eq!(pushout["sets"]["*"].as_array().unwrap().len(), 3);
}

#[test]
fn manifest_records_inputs_and_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let (class, map) = point_class_and_map(dir.path());
    let out = dir.path().join("fact");
    assert_eq!(
        run(&[
            "factorize",
            "--class",
            &class,
            "--map",
            &map,
            "--out",
            &out.display().to_string(),
        ]),
        0
    );
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["inputs"].as_object().unwrap().len(), 2);
    assert!(manifest["outputs"]["certificate.json"].is_string());
    assert_eq!(manifest["config"]["budget"], 10_000_000);
    assert_eq!(manifest["config"]["max_stages"], 8);
    assert_eq!(manifest["config"]["prune"], true);
}

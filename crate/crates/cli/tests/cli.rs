use std::path::PathBuf;
use std::process::{Command, Output};

use gp_core::diagrams::file::DiagramFile;
use gp_core::{instances, GraphProduct, GroupSpecFile};
use serde_json::Value;

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    root.join(name).to_string_lossy().into_owned()
}

fn gp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gp")).args(args).output().expect("gp runs")
}

fn machine(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "machine"];
    all.extend_from_slice(args);
    let out = gp(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    let line = text.lines().next().unwrap_or_else(|| panic!("no output for {args:?}"));
    (out.status.code().unwrap(), serde_json::from_str(line).unwrap())
}

fn product(name: &str) -> GraphProduct {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    GroupSpecFile::from_json(&text).unwrap().build().unwrap()
}

#[test]
fn fixtures_match_instances() {
    assert_eq!(product("gamma_ex.json"), instances::gamma_ex());
    assert_eq!(product("gamma_ex_s3.json"), instances::gamma_ex_s3());
    assert_eq!(product("frobenius_path.json"), instances::frobenius_path());
    assert_eq!(product("infinite_dihedral.json"), instances::infinite_dihedral());
}

#[test]
fn equal_exit_codes() {
    let spec = fixture("gamma_ex.json");
    assert_eq!(gp(&["equal", &spec, "a:1 c:1", "c:1 a:1"]).status.code(), Some(0));
    assert_eq!(gp(&["equal", "--spec", &spec, "a:1 b:1", "b:1 a:1"]).status.code(), Some(1));
    // Cyclic atoms are taken mod the order.
    assert_eq!(gp(&["equal", &spec, "c:4", "c:1"]).status.code(), Some(0));
}

#[test]
fn reduce_empty_word() {
    let (code, v) = machine(&["reduce", &fixture("gamma_ex.json"), ""]);
    assert_eq!(code, 0);
    assert_eq!(v["reduced"], "");
    assert_eq!(v["length"], 0);
}

#[test]
fn frobenius_example_conjugacy() {
    let spec = fixture("frobenius_path.json");
    let g = "e:1 a:1 b:2 c:r2 a:1 e:-1";
    let h = "e:-1 b:1 a:2 c:r3 e:1 b:1";
    let (code, v) = machine(&["conj", &spec, g, h]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "conjugate");
    assert_eq!(v["verified"], true);
    assert_eq!(v["floating"], serde_json::json!(["c"]));
    let p = product("frobenius_path.json");
    let c = p.parse_word(v["witness"].as_str().unwrap()).unwrap();
    assert!(p.verify_witness(&p.parse_word(g).unwrap(), &p.parse_word(h).unwrap(), &c));
    assert!(v["witness-length"].as_u64().unwrap() <= v["bound"].as_u64().unwrap());
    for w in [g, h] {
        let (code, v) = machine(&["cyclred", &spec, w]);
        assert_eq!(code, 0);
        assert_eq!(v["floating"], serde_json::json!(["c"]));
    }
    let (code, v) = machine(&["conj", &spec, g, "e:-1 b:1 a:2 c:s e:1 b:1"]);
    assert_eq!((code, v["verdict"].as_str()), (1, Some("not-conjugate")));
}

#[test]
fn printed_words_reparse() {
    let spec = fixture("gamma_ex_s3.json");
    let p = product("gamma_ex_s3.json");
    let w = "a:1 c:r b:1 c:s a:1 c:r2 b:1";
    let input = p.parse_word(w).unwrap();
    let (_, v) = machine(&["reduce", &spec, w]);
    assert!(p.equal(&p.parse_word(v["reduced"].as_str().unwrap()).unwrap(), &input));
    let (_, v) = machine(&["canon", &spec, w]);
    assert!(p.equal(&p.parse_word(v["canonical"].as_str().unwrap()).unwrap(), &input));
    let (_, v) = machine(&["cyclred", &spec, w]);
    let conj = p.parse_word(v["conjugator"].as_str().unwrap()).unwrap();
    let core = p.parse_word(v["core"].as_str().unwrap()).unwrap();
    assert!(p.equal(&p.conjugate(&conj, &core), &input));
}

#[test]
fn output_is_deterministic() {
    let spec = fixture("gamma_ex_s3.json");
    for args in [
        vec!["conj", spec.as_str(), "a:1 c:r b:1", "b:1 c:r2 a:1"],
        vec!["clf-scan", spec.as_str(), "3"],
        vec!["cyclred", spec.as_str(), "c:s a:1 b:1 c:s"],
    ] {
        let first = gp(&args);
        let second = gp(&args);
        assert_eq!(first.stdout, second.stdout);
        assert_eq!(first.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn input_errors_exit_2() {
    let spec = fixture("gamma_ex.json");
    let (code, v) = machine(&["reduce", &spec, "q:1"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "input");
    assert_eq!(gp(&["reduce", "/nonexistent/spec.json", "a:1"]).status.code(), Some(2));
    assert_eq!(gp(&["reduce", &spec, "a1"]).status.code(), Some(2));
    assert_eq!(gp(&["equal", &spec, "a:1"]).status.code(), Some(2));
    assert_eq!(gp(&["reduce", &fixture("diagram_shuffle.json"), "a:1"]).status.code(), Some(2));
    assert_eq!(gp(&["clf-bound", &spec, "many"]).status.code(), Some(2));
    // The oracle needs finite vertex groups.
    assert_eq!(gp(&["clf-scan", &fixture("frobenius_path.json"), "2"]).status.code(), Some(2));
    let err = gp(&["reduce", &spec, "a:x"]);
    let line = String::from_utf8(err.stderr).unwrap();
    assert_eq!(line.lines().count(), 1);
    assert!(line.starts_with("error: input:"));
}

#[test]
fn resource_limits_exit_3() {
    let spec = fixture("gamma_ex.json");
    let (code, v) = machine(&["--limit-states", "1", "conj", &spec, "a:1 b:1 c:1", "b:1 a:1 c:1"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"], "resource-limit");
    assert_eq!(gp(&["--oracle-cap", "2", "clf-scan", &spec, "3"]).status.code(), Some(3));
}

#[test]
fn bounds_and_scan() {
    let spec = fixture("infinite_dihedral.json");
    let (code, v) = machine(&["clf-bound", &spec, "5"]);
    assert_eq!((code, v["bound"].as_u64()), (0, Some(10)));
    let (code, v) = machine(&["clf-scan", &spec, "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "within-bound");
    assert_eq!(v["scan"].as_array().unwrap().len(), 4);
}

#[test]
fn dehn_truth_table() {
    let (_, v) = machine(&["dehn", &fixture("gamma_ex.json")]);
    assert_eq!(v["case"], "meier");
    let (_, v) = machine(&["dehn", &fixture("free_abelian_pair.json")]);
    assert_eq!(v["case"], "non-meier");
    assert_eq!(v["dehn"], "max(quadratic,delta(x),delta(y))");
    let (code, v) = machine(&["validate", &fixture("frobenius_path.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["opposite-diameter"], 3);
}

#[test]
fn diagram_check_and_move() {
    let file = fixture("diagram_shuffle.json");
    let (code, v) = machine(&["diagram-check", &file, "--segment", "0:3"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "laws-hold");
    assert_eq!(v["other"], 0);
    let boundary = v["outer-boundary"].clone();

    let (code, v) = machine(&["diagram-move", &file, "--list"]);
    assert_eq!(code, 0);
    let moves: Vec<&str> = v["moves"].as_array().unwrap().iter().map(|m| m.as_str().unwrap()).collect();
    let reduction = moves.iter().find(|m| m.starts_with("square-reduction@")).unwrap();
    let dart = reduction.split('@').nth(1).unwrap();

    let out = std::env::temp_dir().join(format!("gp-cli-move-{}.json", std::process::id()));
    let out_s = out.to_string_lossy().into_owned();
    let (code, v) = machine(&["diagram-move", &file, "square-reduction", dart, "--out", &out_s]);
    assert_eq!(code, 0);
    assert_eq!(v["outer-boundary"], boundary);
    let moved = DiagramFile::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let (_, d) = moved.load().unwrap();
    assert_eq!(d.interior_faces().len(), 1);
    let (code, v) = machine(&["diagram-check", &out_s]);
    assert_eq!((code, v["outer-boundary"].clone()), (0, boundary));
    std::fs::remove_file(out).ok();

    let (code, v) = machine(&["diagram-move", &file, "flip", "0"]);
    assert_eq!((code, v["verdict"].as_str()), (1, Some("not-applicable")));
    assert_eq!(gp(&["diagram-move", &file, "twist", "0"]).status.code(), Some(2));
}

#[test]
fn diagram_check_rejects_bad_tiles() {
    let text = std::fs::read_to_string(fixture("diagram_shuffle.json")).unwrap();
    let mut file = DiagramFile::from_json(&text).unwrap();
    for r in file.darts.iter_mut().filter(|r| r.vertex == "c") {
        r.vertex = "b".into();
        r.element = "1".into();
    }
    let path = std::env::temp_dir().join(format!("gp-cli-bad-{}.json", std::process::id()));
    std::fs::write(&path, file.to_json()).unwrap();
    let (code, v) = machine(&["diagram-check", &path.to_string_lossy()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "invalid");
    assert!(v["reason"].as_str().unwrap().contains("commutator"));
}

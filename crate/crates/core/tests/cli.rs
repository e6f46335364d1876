use std::path::{Path, PathBuf};
use std::sync::Arc;

use dwyerkit::cli::execute;
use dwyerkit::fincat::{print_category, print_functor, Functor};
use dwyerkit::fixtures;
use dwyerkit::sset::{print_sset, standard_simplex};

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dwyerkit-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> dwyerkit::cli::Execution {
    execute(std::iter::once("dwyerkit").chain(args.iter().copied()))
}

/// Files for the span gluing two arrows end to start.
fn glue_files(dir: &Path) -> Vec<String> {
    let one = Arc::new(fixtures::terminal());
    let two = Arc::new(fixtures::arrow());
    let i = Functor::point(one.clone(), two.clone(), 0);
    let f = Functor::point(one.clone(), two.clone(), 1);
    vec![
        write(dir, "a.cat", &print_category(&one)),
        write(dir, "b.cat", &print_category(&two)),
        write(dir, "c.cat", &print_category(&two)),
        write(dir, "i.fun", &print_functor(&i)),
        write(dir, "f.fun", &print_functor(&f)),
    ]
}

#[test]
fn list_builtins_json() {
    let ex = run(&["list-builtins", "--json"]);
    assert_eq!(ex.code, 0);
    let v: serde_json::Value = serde_json::from_str(&ex.stdout).unwrap();
    let names: Vec<&str> = v["data"]["builtins"].as_array().unwrap().iter().map(|b| b["name"].as_str().unwrap()).collect();
    for n in ["poset-s2", "monoid-s2", "terminal-cone", "glue-two", "cospan-flat", "localize-monoid"] {
        assert!(names.contains(&n), "{n}");
    }
}

#[test]
fn builtin_specs_from_the_catalog_run() {
    let ex = run(&["list-builtins", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&ex.stdout).unwrap();
    let dir = scratch("catalog");
    for b in v["data"]["builtins"].as_array().unwrap() {
        if b["seeds"].as_u64().unwrap() > 0 {
            continue;
        }
        let path = write(&dir, "spec.json", &b["spec"].to_string());
        let ex = run(&["run", &path]);
        assert_eq!(ex.code, 0, "{}: {}", b["name"], ex.stdout);
    }
}

#[test]
fn monoid_report_is_deterministic() {
    let a = run(&["run", "monoid-s2", "--json"]);
    let b = run(&["run", "monoid-s2", "--json"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    let groups = |side: &str| -> Vec<String> {
        v["data"][side]["homology"]["groups"].as_array().unwrap().iter().map(|g| g["group"].as_str().unwrap().to_string()).collect()
    };
    assert_eq!(groups("simplicial"), ["Z", "0", "Z"]);
    assert_eq!(groups("categorical"), ["Z", "0", "0"]);
}

#[test]
fn seeded_run_prints_its_seeds() {
    let ex = run(&["run", "dwyer-closure", "--seeds", "12"]);
    assert_eq!(ex.code, 0, "{}", ex.stdout);
    assert!(ex.stdout.contains("seeds 0..12"));
    assert!(ex.stdout.contains("passed 12/12"));
}

#[test]
fn malformed_category_exits_1_with_position() {
    let dir = scratch("bad");
    let p = write(&dir, "bad.cat", "objects: a, b\nmorphisms:\n  f: a -> c\n");
    let ex = run(&["nerve", &p]);
    assert_eq!(ex.code, 1);
    assert!(ex.stderr.contains("bad.cat:3:"), "{}", ex.stderr);
}

#[test]
fn unknown_flag_exits_1() {
    assert_eq!(run(&["nerve", "--no-such-flag"]).code, 1);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn pushout_both_methods_agree() {
    let dir = scratch("glue");
    let files = glue_files(&dir);
    let mut args = vec!["pushout"];
    args.extend(files.iter().map(String::as_str));
    let ex = run(&args);
    assert_eq!(ex.code, 0, "{}", ex.stdout);
    assert!(ex.stdout.contains("explicit and presented isomorphic: true"));
}

#[test]
fn explicit_method_refutes_non_dwyer_leg() {
    let dir = scratch("swap");
    let f = glue_files(&dir);
    let args = ["pushout", &f[0], &f[2], &f[1], &f[4], &f[3], "--method", "explicit"];
    let ex = run(&args);
    assert_eq!(ex.code, 3, "{}", ex.stdout);
}

#[test]
fn check_dwyer_by_objects() {
    let dir = scratch("check");
    let two = write(&dir, "two.cat", &print_category(&fixtures::arrow()));
    let ok = run(&["check-dwyer", &two, "--objects", "0"]);
    assert_eq!(ok.code, 0, "{}{}", ok.stdout, ok.stderr);
    let bad = run(&["check-dwyer", &two, "--objects", "1", "--json"]);
    assert_eq!(bad.code, 3);
    let v: serde_json::Value = serde_json::from_str(&bad.stdout).unwrap();
    assert_eq!(v["data"]["verdict"], "refuted");
}

#[test]
fn homology_of_files() {
    let dir = scratch("homology");
    let s = write(&dir, "d2.sset", &print_sset(&standard_simplex(2, 3)));
    let ex = run(&["homology", &s, "--json"]);
    assert_eq!(ex.code, 0, "{}", ex.stderr);
    let v: serde_json::Value = serde_json::from_str(&ex.stdout).unwrap();
    assert_eq!(v["data"]["homology"]["groups"][0]["group"], "Z");
    assert_eq!(v["data"]["homology"]["groups"][1]["group"], "0");
    let c = write(&dir, "iso.cat", &print_category(&fixtures::free_iso()));
    let ex = run(&["homology", &c, "--degree", "4"]);
    assert_eq!(ex.code, 1, "degree above truncation is rejected");
    let ex = run(&["homology", &c, "--truncate", "5", "--degree", "4"]);
    assert_eq!(ex.code, 0);
}

#[test]
fn localize_and_nerve() {
    let dir = scratch("localize");
    let m = write(&dir, "m.cat", &print_category(&fixtures::monoid5()));
    let ex = run(&["localize", &m, "--json"]);
    assert_eq!(ex.code, 0);
    let v: serde_json::Value = serde_json::from_str(&ex.stdout).unwrap();
    assert_eq!(v["data"]["localization"]["morphisms"], 1);
    let ex = run(&["nerve", &m, "--truncate", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&ex.stdout).unwrap();
    assert_eq!(v["data"]["counts"], serde_json::json!([1, 5, 25]));
}

#[test]
fn oversized_nerve_is_a_resource_guard() {
    let dir = scratch("guard");
    let m = write(&dir, "m.cat", &print_category(&fixtures::monoid5()));
    let ex = run(&["nerve", &m, "--truncate", "10"]);
    assert_eq!(ex.code, 2, "{}", ex.stderr);
    assert_eq!(run(&["localize", &m, "--bound", "0"]).code, 1);
}

#[test]
fn compare_and_anodyne_on_files() {
    let dir = scratch("compare");
    let f = glue_files(&dir);
    let mut args = vec!["compare-pushouts"];
    args.extend(f.iter().map(String::as_str));
    let ex = run(&args);
    assert_eq!(ex.code, 0, "{}", ex.stdout);
    assert!(ex.stdout.contains("homology agrees through degree 2: true"));
    args[0] = "anodyne-search";
    let ex = run(&args);
    assert_eq!(ex.code, 0, "{}", ex.stdout);
    assert!(ex.stdout.contains("replay verified"));
}

#[test]
fn out_flag_writes_report() {
    let dir = scratch("out");
    let out = dir.join("r.json");
    let ex = run(&["run", "glue-two", "--json", "--out", out.to_str().unwrap()]);
    assert_eq!(ex.code, 0);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), ex.stdout);
}

#[test]
fn span_spec_with_relative_paths() {
    let dir = scratch("spec");
    glue_files(&dir);
    let spec = r#"{"name": "glue", "span": {"a": "a.cat", "b": "b.cat", "c": "c.cat", "i": "i.fun", "f": "f.fun"}, "out": "glue.txt"}"#;
    let p = write(&dir, "glue.json", spec);
    let ex = run(&["run", &p]);
    assert_eq!(ex.code, 0, "{}{}", ex.stdout, ex.stderr);
    assert!(dir.join("glue.txt").exists());
    let bad = write(&dir, "bad.json", "{\"name\": \"x\",\n \"span\": 3}");
    let ex = run(&["run", &bad]);
    assert_eq!(ex.code, 1);
    assert!(ex.stderr.contains("bad.json:2:"), "{}", ex.stderr);
}
